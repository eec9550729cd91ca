#pragma once

#include "skmaass/fourier_table.hpp"
#include "skmaass/theta.hpp"

#include <map>
#include <optional>

namespace skm {

/* The weight-10 level-(1,1) cusp form built as the product of the squares of
 * the ten even theta constants, truncated exactly at max(a, c) <= bound and
 * normalized so the coefficient at (1, 1, 1) is 1.  The construction
 * hard-checks that every surviving exponent is half-integral and positive
 * definite. */
FourierTable igusa_chi10(long bound);

/* Classical Maass relation at T, for a level-(1,1) table:
 *     a(T) = sum_{r | content(T)} r^(k-1) a((a c / r^2, b / r, 1)).
 * Referenced keys outside the bound raise bound_error. */
bool maass_check_classical(const FourierTable& t, const QForm& big_t);
/* True iff T and every key referenced by the relation are within the bound. */
bool maass_relation_in_bound(const FourierTable& t, const QForm& big_t);

/* Level-carrying Maass relation at T = l * T0 where every prime of l divides
 * n2 and content(T0) is coprime to n2:
 *     a(T) = sum_{r | content(T0)} r^(k-1) a(l * (a0 c0 / r^2, b0 / r, 1)).
 * With n2 = 1 (forcing l = 1) this is the classical relation. */
bool maass_check_levelN(const FourierTable& t, const QForm& big_t, const Int& l);
bool maass_levelN_in_bound(const FourierTable& t, const QForm& big_t, const Int& l);

/* The canonical scale for the level relation at T: the part of content(T)
 * supported on the primes of n2. */
Int levelN_smooth_scale(const FourierTable& t, const QForm& big_t);

/* The inertness hypothesis at the primes of n1:
 * kronecker(disc(T/l), p) = -1 for every p | n1.  Vacuous when n1 = 1. */
bool maass_levelN_hypothesis(const FourierTable& t, const QForm& big_t, const Int& l);

/* Coefficients of the underlying Jacobi form: c(D) = a((n, r, 1)) for any
 * representation D = 4n - r^2 visible in the table.  Disagreement between two
 * representations of the same D is a hard error. */
std::map<Int, Rat> extract_jacobi(const FourierTable& t);

/* Rebuilds the full table from Jacobi coefficients:
 *     a(T) = sum_{r | content(T)} r^(k-1) c(|disc(T)| / r^2);
 * requires every referenced c(D) to be present. */
FourierTable lift_from_jacobi(const std::map<Int, Rat>& c, long k, long bound);

struct MaassVerifyReport {
    long relations_checked = 0;
    long relations_failed = 0;
    long relations_skipped_oob = 0;
    long relations_skipped_hypothesis = 0;
    long invariance_checked = 0;
    long invariance_failed = 0;
    long jacobi_checked = 0;
    long jacobi_failed = 0;
    long jacobi_classes = 0;
    std::optional<QForm> first_failure;
    bool ok() const {
        return relations_failed == 0 && invariance_failed == 0 && jacobi_failed == 0;
    }
};

/* Runs every decidable check on a table: invariance of the coefficients under
 * the relevant unimodular group, single-column consistency (classical mode),
 * and the Maass relation at every in-bound key of the lattice box whose
 * relation is decidable within the bound.  Level mode uses the level relation
 * at the canonical scale and skips keys failing the inertness hypothesis. */
MaassVerifyReport verify_maass_table(const FourierTable& t, bool level_mode);

} // namespace skm
