#pragma once

#include "skmaass/common.hpp"

#include <map>
#include <string>
#include <vector>

namespace skm {

/* Formal Q-linear combination of the generators B(0, n), n >= 0, attached to
 * a fixed prime p.  Products of local Bessel function values at the identity
 * never get evaluated numerically; identities between them are decided on
 * these symbols with exact rational coefficients. */
class BesselExpr {
public:
    explicit BesselExpr(Int p);

    const Int& prime() const { return p_; }
    const std::map<long, Rat>& terms() const { return terms_; }

    void add_term(long n, const Rat& coeff);
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const BesselExpr&) const = default;

private:
    Int p_;
    std::map<long, Rat> terms_;
};

/* Same idea over a fixed support of distinct primes: terms are multi-indices
 * (n_p)_p standing for prod_p B_p(0, n_p). */
class BesselProductExpr {
public:
    explicit BesselProductExpr(std::vector<Int> primes);

    const std::vector<Int>& primes() const { return primes_; }
    const std::map<std::vector<long>, Rat>& terms() const { return terms_; }

    void add_term(const std::vector<long>& index, const Rat& coeff);
    void set_term(const std::vector<long>& index, const Rat& coeff);
    bool operator==(const BesselProductExpr&) const = default;

private:
    Int check_index(const std::vector<long>& index) const;
    std::vector<Int> primes_;
    std::map<std::vector<long>, Rat> terms_;
};

/* Value of the degenerate (type IIb) local Bessel function at
 * diag(p^(l+m), p^m, p^m, p^(l+m)):
 *     sum_{i=0}^{l} p^(-i) B(0, l + m - i),
 * and zero outside the support l, m >= 0. */
BesselExpr iib_value(const Int& p, long l, long m);

/* Decides the product identity behind the level-raising Maass relations:
 *     prod_{p | LM, p ∤ N2} (IIb value at (l_p, m_p))
 *         = sum_{r | L, gcd(r, N2) = 1} (1/r) prod_p B_p(0, l_p + m_p - ord_p r)
 * with l_p = ord_p L, m_p = ord_p M.  Both sides are expanded independently
 * into BesselProductExpr form and compared coefficient by coefficient. */
bool maass_identity_check(const Int& big_l, const Int& big_m, const Int& n2);

/* --- existence table ------------------------------------------------- */

enum class ReprType { I, IIa, IIb, IIIa, IIIb, IVa, IVb, IVc, IVd, Va, Vb, Vc, Vd, VIa, VIb, VIc, VId };
enum class TorusKind { Split, Field };

/* Unramified twists entering the conditions: sigma . Norm, (chi sigma) . Norm,
 * (xi sigma) . Norm on the torus of the quadratic algebra... */
enum class NormChar { Sigma, ChiSigma, XiSigma };
/* ...and the characters pairing with the split torus diag(a, b, b, a). */
enum class SplitChar { Sigma, ChiSigma, NuSigma, NuInvSigma };

/* Condition on the torus character for a Bessel functional to exist:
 * everything, nothing, a conjunction of (dis)equalities with norm twists, or
 * membership in a finite set of split-torus character pairs. */
struct BesselCondition {
    bool all = false;
    std::vector<std::pair<NormChar, bool>> norm_twists; /* (character, must equal?) */
    std::vector<std::pair<SplitChar, SplitChar>> allowed_pairs;
    bool none() const { return !all && norm_twists.empty() && allowed_pairs.empty(); }
    bool operator==(const BesselCondition&) const = default;
};

BesselCondition bessel_exists_lookup(ReprType type, TorusKind torus);

ReprType repr_type_from_string(const std::string& tag);
std::string to_string(ReprType type);

} // namespace skm
