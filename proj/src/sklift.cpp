#include "skmaass/sklift.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace skm {

namespace {

std::string form_str(const QForm& t) {
    std::ostringstream ss;
    ss << t;
    return ss.str();
}

Int pow_int(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

} // namespace

FourierTable igusa_chi10(long bound) {
    if (bound < 2)
        throw std::domain_error("igusa_chi10: bound must be at least 2");
    const long bound8 = 16 * bound; /* trace completeness through a + c = 2 * bound */

    ThetaSeries prod = ThetaSeries::one(bound8);
    for (const ThetaChar& ch : even_characteristics()) {
        const ThetaSeries th = theta_constant(ch, 2 * bound);
        prod = theta_mul(prod, th, bound8);
        prod = theta_mul(prod, th, bound8);
    }

    std::map<QForm, Int> raw;
    for (const auto& [key, v] : prod.terms()) {
        if (v == 0)
            continue;
        long a8, b8, c8;
        ThetaSeries::unpack(key, a8, b8, c8);
        if (a8 % 8 != 0 || b8 % 8 != 0 || c8 % 8 != 0)
            throw consistency_error("igusa_chi10: non half-integral exponent survived");
        const long a = a8 / 8, b = b8 / 8, c = c8 / 8;
        if (a <= 0 || c <= 0 || Int(b) * b - Int(4) * a * c >= 0)
            throw consistency_error("igusa_chi10: singular exponent with nonzero coefficient");
        if (a > bound || c > bound)
            continue;
        raw.emplace(QForm(a, b, c), v);
    }

    const auto norm_it = raw.find(QForm(1, 1, 1));
    if (norm_it == raw.end())
        throw consistency_error("igusa_chi10: coefficient at (1, 1, 1) vanished");
    const Int norm = norm_it->second;

    FourierTable t;
    t.k = 10;
    t.n1 = 1;
    t.n2 = 1;
    t.bound = bound;
    for (const auto& [key, v] : raw)
        t.set(key, make_rat(v, norm));
    return t;
}

bool maass_check_classical(const FourierTable& t, const QForm& big_t) {
    if (t.n1 != 1 || t.n2 != 1)
        throw std::domain_error("maass_check_classical: table must have level (1, 1)");
    const Rat lhs = t.coeff(big_t);
    Rat rhs(0);
    const Int g = big_t.content();
    for (const Int& r : divisors(g)) {
        const QForm term(big_t.a() * big_t.c() / (r * r), big_t.b() / r, 1);
        rhs += Rat(pow_int(r, t.k - 1)) * t.coeff(term);
    }
    return lhs == rhs;
}

bool maass_relation_in_bound(const FourierTable& t, const QForm& big_t) {
    if (!t.in_bound(big_t))
        return false;
    for (const Int& r : divisors(big_t.content()))
        if (big_t.a() * big_t.c() / (r * r) > t.bound)
            return false;
    return true;
}

Int levelN_smooth_scale(const FourierTable& t, const QForm& big_t) {
    if (t.n2 == 1)
        return 1;
    return smooth_part(big_t.content(), t.n2);
}

namespace {

/* shared validation; returns T / l */
QForm leveln_inner(const FourierTable& t, const QForm& big_t, const Int& l) {
    if (l < 1)
        throw std::domain_error("maass_check_levelN: scale must be positive");
    if (t.n2 == 1) {
        if (l != 1)
            throw std::domain_error("maass_check_levelN: scale must be 1 when N2 = 1");
    } else if (l > 1 && smooth_part(l, t.n2) != l) {
        throw std::domain_error("maass_check_levelN: every prime of the scale must divide N2");
    }
    const QForm t0 = big_t.divided(l); /* throws when T is not l times an integral form */
    if (t.n2 > 1 && gcd(t0.content(), t.n2) != 1)
        throw std::domain_error(
            "maass_check_levelN: content of T / scale must be coprime to N2 (scale too small)");
    return t0;
}

} // namespace

bool maass_check_levelN(const FourierTable& t, const QForm& big_t, const Int& l) {
    const QForm t0 = leveln_inner(t, big_t, l);
    const Rat lhs = t.coeff(big_t);
    Rat rhs(0);
    for (const Int& r : divisors(t0.content())) {
        const QForm term(l * (t0.a() * t0.c() / (r * r)), l * (t0.b() / r), l);
        rhs += Rat(pow_int(r, t.k - 1)) * t.coeff(term);
    }
    return lhs == rhs;
}

bool maass_levelN_in_bound(const FourierTable& t, const QForm& big_t, const Int& l) {
    if (!t.in_bound(big_t))
        return false;
    const QForm t0 = leveln_inner(t, big_t, l);
    if (l > t.bound)
        return false;
    for (const Int& r : divisors(t0.content()))
        if (l * (t0.a() * t0.c() / (r * r)) > t.bound)
            return false;
    return true;
}

bool maass_levelN_hypothesis(const FourierTable& t, const QForm& big_t, const Int& l) {
    const QForm t0 = leveln_inner(t, big_t, l);
    const Int d0 = t0.disc();
    for (const auto& [p, e] : factor(t.n1))
        if (kronecker(d0, p) != -1)
            return false;
    return true;
}

std::map<Int, Rat> extract_jacobi(const FourierTable& t) {
    if (t.n1 != 1 || t.n2 != 1)
        throw std::domain_error("extract_jacobi: table must have level (1, 1)");
    std::map<Int, Rat> c;
    std::map<Int, QForm> witness;
    for (long n = 1; n <= t.bound; ++n) {
        for (long r = 0; Int(r) * r < 4 * Int(n); ++r) {
            for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
                const QForm f(n, sgn ? -r : r, 1);
                const Rat v = t.coeff(f);
                const Int d = Int(4) * n - Int(r) * r;
                auto [it, fresh] = c.emplace(d, v);
                if (fresh) {
                    witness.emplace(d, f);
                } else if (it->second != v) {
                    throw consistency_error("extract_jacobi: coefficient at " + form_str(f) +
                                            " conflicts with " + form_str(witness.at(d)) +
                                            " for D = " + d.get_str());
                }
            }
        }
    }
    return c;
}

FourierTable lift_from_jacobi(const std::map<Int, Rat>& c, long k, long bound) {
    if (k < 1)
        throw std::domain_error("lift_from_jacobi: weight must be positive");
    if (bound < 1)
        throw std::domain_error("lift_from_jacobi: bound must be positive");
    FourierTable t;
    t.k = k;
    t.n1 = 1;
    t.n2 = 1;
    t.bound = bound;
    for (long a = 1; a <= bound; ++a) {
        for (long cc = 1; cc <= bound; ++cc) {
            long bmax = 0;
            while (Int(bmax + 1) * (bmax + 1) < Int(4) * a * cc)
                ++bmax;
            for (long b = -bmax; b <= bmax; ++b) {
                const QForm key(a, b, cc);
                Rat val(0);
                for (const Int& r : divisors(key.content())) {
                    const Int d = -key.disc() / (r * r);
                    const auto it = c.find(d);
                    if (it == c.end())
                        throw std::domain_error("lift_from_jacobi: missing c(D) for D = " +
                                                d.get_str());
                    val += Rat(pow_int(r, k - 1)) * it->second;
                }
                if (val != 0)
                    t.set(key, std::move(val));
            }
        }
    }
    return t;
}

namespace {

/* canonical representative of the full unimodular orbit (including the
 * orientation-reversing half): reduced form with b >= 0 */
QForm gl_canonical(const QForm& t) {
    QForm r = reduce(t).first;
    if (r.b() < 0)
        r = reduce(r.mirrored()).first;
    return r;
}

template <typename Fn>
void for_each_box_key(long bound, Fn fn) {
    for (long a = 1; a <= bound; ++a) {
        for (long c = 1; c <= bound; ++c) {
            long bmax = 0;
            while (Int(bmax + 1) * (bmax + 1) < Int(4) * a * c)
                ++bmax;
            for (long b = -bmax; b <= bmax; ++b)
                fn(QForm(a, b, c));
        }
    }
}

} // namespace

MaassVerifyReport verify_maass_table(const FourierTable& t, bool level_mode) {
    MaassVerifyReport rep;
    auto record = [&rep](const QForm& f) {
        if (!rep.first_failure)
            rep.first_failure = f;
    };
    const bool trivial_level = t.n1 == 1 && t.n2 == 1;
    if (!level_mode && !trivial_level)
        throw std::domain_error(
            "verify_maass_table: classical mode requires level (1, 1); use level mode");

    /* invariance of stored coefficients */
    if (trivial_level) {
        for (const auto& [key, v] : t.coeffs) {
            ++rep.invariance_checked;
            if (t.coeff(gl_canonical(key)) != v) {
                ++rep.invariance_failed;
                record(key);
            }
        }
    } else {
        /* mirror invariance holds at every level; beyond that, compare within
         * buckets of equal (disc, content) under the level-n1 witness search */
        std::map<std::pair<Int, Int>, std::vector<const QForm*>> buckets;
        for (const auto& [key, v] : t.coeffs) {
            ++rep.invariance_checked;
            if (t.coeff(key.mirrored()) != v) {
                ++rep.invariance_failed;
                record(key);
            }
            buckets[{key.disc(), key.content()}].push_back(&key);
        }
        for (const auto& [sig, forms] : buckets) {
            for (std::size_t i = 0; i < forms.size(); ++i) {
                for (std::size_t j = i + 1; j < forms.size(); ++j) {
                    if (!gamma0_equivalent(*forms[i], *forms[j], t.n1))
                        continue;
                    ++rep.invariance_checked;
                    if (t.coeff(*forms[i]) != t.coeff(*forms[j])) {
                        ++rep.invariance_failed;
                        record(*forms[i]);
                    }
                }
            }
        }
    }

    /* single-column consistency: a((n, r, 1)) may only depend on 4n - r^2 */
    if (trivial_level) {
        std::map<Int, std::pair<QForm, Rat>> seen;
        for (long n = 1; n <= t.bound; ++n) {
            for (long r = 0; Int(r) * r < 4 * Int(n); ++r) {
                for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
                    const QForm f(n, sgn ? -r : r, 1);
                    const Rat v = t.coeff(f);
                    const Int d = Int(4) * n - Int(r) * r;
                    auto [it, fresh] = seen.emplace(d, std::make_pair(f, v));
                    if (fresh)
                        continue;
                    ++rep.jacobi_checked;
                    if (it->second.second != v) {
                        ++rep.jacobi_failed;
                        record(f);
                    }
                }
            }
        }
        rep.jacobi_classes = static_cast<long>(seen.size());
    }

    /* Maass relation over the whole lattice box, absent keys included (their
     * zero coefficient is a claim, too) */
    for_each_box_key(t.bound, [&](const QForm& key) {
        if (level_mode) {
            const Int l = levelN_smooth_scale(t, key);
            if (!maass_levelN_hypothesis(t, key, l)) {
                ++rep.relations_skipped_hypothesis;
                return;
            }
            if (!maass_levelN_in_bound(t, key, l)) {
                ++rep.relations_skipped_oob;
                return;
            }
            ++rep.relations_checked;
            if (!maass_check_levelN(t, key, l)) {
                ++rep.relations_failed;
                record(key);
            }
        } else {
            if (!maass_relation_in_bound(t, key)) {
                ++rep.relations_skipped_oob;
                return;
            }
            ++rep.relations_checked;
            if (!maass_check_classical(t, key)) {
                ++rep.relations_failed;
                record(key);
            }
        }
    });
    return rep;
}

} // namespace skm
