#pragma once

#include "skmaass/arith.hpp"

#include <iosfwd>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace skm {

/* Element of SL2(Z): [[p, q], [r, s]] with ps - qr = 1. */
class UnimodularMatrix {
public:
    UnimodularMatrix(Int p, Int q, Int r, Int s);
    static UnimodularMatrix identity();

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& s() const { return s_; }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    UnimodularMatrix inverse() const;
    UnimodularMatrix negated() const;

    /* Membership in the upper-triangular congruence group: upper-right entry
     * divisible by n. */
    bool in_gamma0_upper(const Int& n) const;

    bool operator==(const UnimodularMatrix&) const = default;

private:
    Int p_, q_, r_, s_;
};

std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& u);

/* Positive definite integral binary quadratic form a x^2 + b xy + c y^2,
 * identified with the half-integral matrix [[a, b/2], [b/2, c]]. */
class QForm {
public:
    QForm(Int a, Int b, Int c);

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    Int disc() const { return b_ * b_ - 4 * a_ * c_; }
    Int content() const;

    /* Congruent form under U in SL2(Z): transpose(U) * T * U. */
    QForm transformed(const UnimodularMatrix& u) const;
    QForm scaled(const Int& l) const;
    QForm divided(const Int& l) const;
    QForm mirrored() const { return QForm(a_, -b_, c_); }

    bool operator==(const QForm&) const = default;
    bool operator<(const QForm& o) const {
        return std::tie(a_, b_, c_) < std::tie(o.a_, o.b_, o.c_);
    }

private:
    Int a_, b_, c_;
};

std::ostream& operator<<(std::ostream& os, const QForm& t);

/* Congruence by an arbitrary integer matrix X = [[x1, x2], [x3, x4]] with
 * nonzero determinant: transpose(X) * T * X. */
QForm transformed_general(const QForm& t, const Int& x1, const Int& x2, const Int& x3,
                          const Int& x4);

/* disc = d * conductor^2 with d fundamental. */
struct FundamentalSplit {
    Int d;
    Int conductor;
};
FundamentalSplit split_discriminant(const Int& disc);

/* Canonical form of discriminant d < 0 fundamental:
 * (-d/4, 0, 1) for d = 0 (mod 4), ((1-d)/4, 1, 1) for d = 1 (mod 4). */
QForm s_of_d(const Int& d);

/* Gauss-reduced: |b| <= a <= c, with b >= 0 whenever |b| = a or a = c. */
bool is_reduced(const QForm& t);

/* Reduction with witness: returns (r, u) with transpose(u) * t * u = r. */
std::pair<QForm, UnimodularMatrix> reduce(const QForm& t);

/* All reduced primitive forms of the given negative discriminant,
 * deterministic order (a ascending, then b). */
std::vector<QForm> reduced_primitive_forms(const Int& disc);

/* Integral automorphs E(t) = {u in SL2(Z) : transpose(u) t u = t}: {+-1}
 * generically, order 4 resp. 6 when t is a multiple of a form of fundamental
 * discriminant -4 resp. -3 with trivial conductor. */
std::vector<UnimodularMatrix> automorphism_group(const QForm& t);

/* Witness u with transpose(u) t1 u = t2, if the forms are SL2(Z)-equivalent. */
std::optional<UnimodularMatrix> sl2_equivalent(const QForm& t1, const QForm& t2);

/* Same, with the witness constrained to upper-right entry = 0 (mod n).  The
 * finite witness set u1 * E(r) * u2^-1 is exhaustive: any g with
 * transpose(g) t1 g = t2 factors through an automorph of the common
 * reduced form. */
std::optional<UnimodularMatrix> gamma0_equivalent(const QForm& t1, const QForm& t2, const Int& n);

/* Index of the congruence subgroup in SL2(Z): n * prod_{p | n} (1 + 1/p). */
Int gamma0_index(const Int& n);

/* Left-coset representatives of the upper-triangular congruence group in
 * SL2(Z), parametrized by second columns (u, v) with v | n, u mod n/v,
 * gcd(u, v) = 1. */
std::vector<UnimodularMatrix> coset_reps_gamma0(const Int& n);

struct ClassSet {
    Int d, m, l, n;
    std::vector<QForm> representatives;
};

/* Equivalence classes (under the level-n congruence group) of forms with
 * content l and disc d m^2 l^2, i.e. l times a primitive form of
 * discriminant d m^2.  d fundamental < 0; m, l, n >= 1. */
ClassSet enumerate_classes(const Int& d, const Int& m, const Int& l, const Int& n);

/* Closed-form count of the same classes. */
Int count_classes_formula(const Int& d, const Int& m, const Int& l, const Int& n);

/* The subset of classes in the image of the ray class group of conductor
 * m n: each proper ideal class a of the conductor-mn order contributes
 * l * diag(m, 1) S diag(m, 1), where S is the norm form of a O_K on a
 * positively oriented basis adapted to the index-mn sublattice a.  The image
 * size is guarded against the ray class number (the map is injective). */
ClassSet h1_classes(const Int& d, const Int& m, const Int& l, const Int& n);

/* True iff every prime p | n is inert in the order of discriminant d m^2,
 * i.e. kronecker(d m^2, p) = -1; equivalent to the shape classes exhausting
 * all classes. */
bool is_phi_surjective(const Int& d, const Int& m, const Int& n);

} // namespace skm
