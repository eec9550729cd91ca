#include "skmaass/bessel.hpp"

#include "skmaass/arith.hpp"

#include <algorithm>

namespace skm {

BesselExpr::BesselExpr(Int p) : p_(std::move(p)) {
    if (!is_prime(p_))
        throw std::domain_error("BesselExpr: p must be prime");
}

void BesselExpr::add_term(long n, const Rat& coeff) {
    if (n < 0)
        throw std::domain_error("BesselExpr: generator index must be nonnegative");
    Rat& slot = terms_[n];
    slot += coeff;
    if (slot == 0)
        terms_.erase(n);
}

BesselProductExpr::BesselProductExpr(std::vector<Int> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw std::domain_error("BesselProductExpr: support must consist of primes");
        if (i > 0 && primes_[i - 1] >= primes_[i])
            throw std::domain_error("BesselProductExpr: support must be strictly ascending");
    }
}

Int BesselProductExpr::check_index(const std::vector<long>& index) const {
    if (index.size() != primes_.size())
        throw std::domain_error("BesselProductExpr: index length does not match support");
    for (long n : index)
        if (n < 0)
            throw std::domain_error("BesselProductExpr: generator index must be nonnegative");
    return 0;
}

void BesselProductExpr::add_term(const std::vector<long>& index, const Rat& coeff) {
    check_index(index);
    Rat& slot = terms_[index];
    slot += coeff;
    if (slot == 0)
        terms_.erase(index);
}

void BesselProductExpr::set_term(const std::vector<long>& index, const Rat& coeff) {
    check_index(index);
    if (coeff == 0)
        terms_.erase(index);
    else
        terms_[index] = coeff;
}

BesselExpr iib_value(const Int& p, long l, long m) {
    BesselExpr e(p);
    if (l < 0 || m < 0)
        return e; /* outside the support of the spherical function */
    Int pi = 1;
    for (long i = 0; i <= l; ++i) {
        e.add_term(l + m - i, make_rat(1, pi));
        pi *= p;
    }
    return e;
}

bool maass_identity_check(const Int& big_l, const Int& big_m, const Int& n2) {
    if (big_l < 1 || big_m < 1 || n2 < 1)
        throw std::domain_error("maass_identity_check: arguments must be positive");

    /* support: primes of L*M prime to N2 */
    std::vector<Int> primes;
    std::vector<long> lp, mp;
    for (const auto& [p, e] : factor(big_l * big_m)) {
        if (mpz_divisible_p(n2.get_mpz_t(), p.get_mpz_t()))
            continue;
        primes.push_back(p);
        lp.push_back(static_cast<long>(mpz_divisible_p(big_l.get_mpz_t(), p.get_mpz_t())
                                           ? ord_p(big_l, p)
                                           : 0));
        mp.push_back(static_cast<long>(mpz_divisible_p(big_m.get_mpz_t(), p.get_mpz_t())
                                           ? ord_p(big_m, p)
                                           : 0));
    }

    /* left side: expand the product of the per-prime IIb values */
    std::map<std::vector<long>, Rat> lhs_terms{{{}, Rat(1)}};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const BesselExpr f = iib_value(primes[i], lp[i], mp[i]);
        std::map<std::vector<long>, Rat> next;
        for (const auto& [idx, c] : lhs_terms) {
            for (const auto& [n, cn] : f.terms()) {
                std::vector<long> e = idx;
                e.push_back(n);
                next[e] += c * cn;
            }
        }
        lhs_terms = std::move(next);
    }

    /* right side: divisor sum over r | L with r prime to N2 */
    Int l_free = big_l;
    if (n2 > 1)
        l_free = big_l / smooth_part(big_l, n2);
    std::map<std::vector<long>, Rat> rhs_terms;
    for (const Int& r : divisors(l_free)) {
        std::vector<long> idx(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const long rp = mpz_divisible_p(r.get_mpz_t(), primes[i].get_mpz_t())
                                ? static_cast<long>(ord_p(r, primes[i]))
                                : 0;
            idx[i] = lp[i] + mp[i] - rp;
        }
        rhs_terms[idx] += make_rat(1, r);
    }

    BesselProductExpr lhs(primes), rhs(primes);
    for (const auto& [idx, c] : lhs_terms)
        lhs.add_term(idx, c);
    for (const auto& [idx, c] : rhs_terms)
        rhs.add_term(idx, c);
    return lhs == rhs;
}

/* --- existence table ------------------------------------------------- */

namespace {

BesselCondition cond_all() {
    BesselCondition c;
    c.all = true;
    return c;
}

BesselCondition cond_none() {
    return {};
}

BesselCondition cond_norm(std::vector<std::pair<NormChar, bool>> twists) {
    BesselCondition c;
    c.norm_twists = std::move(twists);
    return c;
}

BesselCondition cond_pairs(std::vector<std::pair<SplitChar, SplitChar>> pairs) {
    BesselCondition c;
    c.allowed_pairs = std::move(pairs);
    return c;
}

} // namespace

BesselCondition bessel_exists_lookup(ReprType type, TorusKind torus) {
    const bool split = torus == TorusKind::Split;
    switch (type) {
    case ReprType::I:
        return cond_all();
    case ReprType::IIa:
        return split ? cond_all() : cond_norm({{NormChar::ChiSigma, false}});
    case ReprType::IIb:
        return cond_norm({{NormChar::ChiSigma, true}});
    case ReprType::IIIa:
        return cond_all();
    case ReprType::IIIb:
        return split ? cond_pairs({{SplitChar::ChiSigma, SplitChar::Sigma},
                                   {SplitChar::Sigma, SplitChar::ChiSigma}})
                     : cond_none();
    case ReprType::IVa:
        return split ? cond_all() : cond_norm({{NormChar::Sigma, false}});
    case ReprType::IVb:
        return cond_norm({{NormChar::Sigma, true}});
    case ReprType::IVc:
        return split ? cond_pairs({{SplitChar::NuSigma, SplitChar::NuInvSigma},
                                   {SplitChar::NuInvSigma, SplitChar::NuSigma}})
                     : cond_none();
    case ReprType::IVd:
        return cond_none();
    case ReprType::Va:
        return split ? cond_all()
                     : cond_norm({{NormChar::Sigma, false}, {NormChar::XiSigma, false}});
    case ReprType::Vb:
        return split ? cond_norm({{NormChar::Sigma, true}})
                     : cond_norm({{NormChar::Sigma, true}, {NormChar::XiSigma, false}});
    case ReprType::Vc:
        return split ? cond_norm({{NormChar::XiSigma, true}})
                     : cond_norm({{NormChar::Sigma, false}, {NormChar::XiSigma, true}});
    case ReprType::Vd:
        return split ? cond_none()
                     : cond_norm({{NormChar::Sigma, true}, {NormChar::XiSigma, true}});
    case ReprType::VIa:
        return split ? cond_all() : cond_norm({{NormChar::Sigma, false}});
    case ReprType::VIb:
        return split ? cond_none() : cond_norm({{NormChar::Sigma, true}});
    case ReprType::VIc:
        return split ? cond_norm({{NormChar::Sigma, true}}) : cond_none();
    case ReprType::VId:
        return split ? cond_norm({{NormChar::Sigma, true}}) : cond_none();
    }
    throw std::domain_error("bessel_exists_lookup: unknown representation type");
}

namespace {

const std::pair<const char*, ReprType> kTypeTags[] = {
    {"I", ReprType::I},     {"IIa", ReprType::IIa},   {"IIb", ReprType::IIb},
    {"IIIa", ReprType::IIIa}, {"IIIb", ReprType::IIIb}, {"IVa", ReprType::IVa},
    {"IVb", ReprType::IVb}, {"IVc", ReprType::IVc},   {"IVd", ReprType::IVd},
    {"Va", ReprType::Va},   {"Vb", ReprType::Vb},     {"Vc", ReprType::Vc},
    {"Vd", ReprType::Vd},   {"VIa", ReprType::VIa},   {"VIb", ReprType::VIb},
    {"VIc", ReprType::VIc}, {"VId", ReprType::VId},
};

} // namespace

ReprType repr_type_from_string(const std::string& tag) {
    for (const auto& [name, type] : kTypeTags)
        if (tag == name)
            return type;
    throw std::domain_error("repr_type_from_string: unknown type tag '" + tag + "'");
}

std::string to_string(ReprType type) {
    for (const auto& [name, t] : kTypeTags)
        if (t == type)
            return name;
    throw std::domain_error("to_string: unknown representation type");
}

} // namespace skm
