#include "skmaass/arith.hpp"

#include <algorithm>

namespace skm {

namespace {

/* Base set covering a deterministic test for n < 3.3 * 10^24. */
constexpr unsigned long kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    for (unsigned long b : kMrBases) {
        if (n == b)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b))
            return false;
    }
    Int d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    const Int n1 = n - 1;
    for (unsigned long b : kMrBases) {
        Int x, base(b);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n1)
            continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

Factorization factor(const Int& n) {
    if (n <= 0)
        throw std::domain_error("factor: argument must be positive");
    Factorization out;
    Int rem = n;
    auto strip = [&](const Int& p) {
        unsigned long e = 0;
        while (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
            rem /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({p, e});
    };
    for (unsigned long p : {2, 3, 5})
        strip(Int(p));
    /* wheel over residues coprime to 2, 3, 5, starting at 7 */
    static const unsigned long gaps[] = {4, 2, 4, 2, 4, 6, 2, 6};
    Int c = 7;
    std::size_t gi = 0;
    while (rem > 1) {
        if (c * c > rem || is_prime(rem)) {
            out.push_back({rem, 1});
            break;
        }
        strip(c);
        c += gaps[gi];
        gi = (gi + 1) % 8;
    }
    return out;
}

Int unfactor(const Factorization& f) {
    Int n = 1;
    for (const auto& [p, e] : f) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        n *= pe;
    }
    return n;
}

std::vector<Int> divisors(const Int& n) {
    if (n < 1)
        throw std::domain_error("divisors: argument must be positive");
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : factor(n)) {
        const std::size_t base = out.size();
        Int pe = 1;
        for (unsigned long i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned long ord_p(const Int& x, const Int& p) {
    if (x == 0)
        throw std::domain_error("ord_p: argument must be nonzero");
    if (p < 2)
        throw std::domain_error("ord_p: p must be at least 2");
    Int reduced;
    return mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_squarefree(const Int& n) {
    if (n == 0)
        return false;
    Int m = abs(n);
    for (const auto& [p, e] : factor(m))
        if (e > 1)
            return false;
    return true;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0)
        return false;
    const unsigned long m4 = mpz_fdiv_ui(d.get_mpz_t(), 4);
    if (m4 == 1)
        return is_squarefree(d);
    if (m4 != 0)
        return false;
    const Int q = d / 4;
    const unsigned long q4 = mpz_fdiv_ui(q.get_mpz_t(), 4);
    return (q4 == 2 || q4 == 3) && is_squarefree(q);
}

Int smooth_part(const Int& x, const Int& n) {
    if (x == 0)
        throw std::domain_error("smooth_part: x must be nonzero");
    if (n < 2)
        throw std::domain_error("smooth_part: n must be at least 2");
    Int s = 1;
    for (const auto& [p, e] : factor(n)) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), ord_p(x, p));
        s *= pe;
    }
    return s;
}

Int count_roots_minus_one_closed(const Int& n) {
    if (n < 1)
        throw std::domain_error("count_roots_minus_one: n must be positive");
    Int count = 1;
    for (const auto& [p, e] : factor(n)) {
        if (p == 2) {
            if (e > 1)
                return 0;
        } else if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) {
            count *= 2;
        } else {
            return 0;
        }
    }
    return count;
}

Int count_roots_omega_closed(const Int& n) {
    if (n < 1)
        throw std::domain_error("count_roots_omega: n must be positive");
    Int count = 1;
    for (const auto& [p, e] : factor(n)) {
        if (p == 3) {
            if (e > 1)
                return 0;
        } else if (mpz_fdiv_ui(p.get_mpz_t(), 6) == 1) {
            count *= 2;
        } else {
            return 0;
        }
    }
    return count;
}

namespace {

template <typename Cond>
Int count_roots_brute(const Int& n, Cond cond) {
    if (n < 1)
        throw std::domain_error("count_roots: n must be positive");
    if (!n.fits_ulong_p())
        throw std::domain_error("count_roots: brute-force count out of supported range");
    const unsigned long m = n.get_ui();
    unsigned long count = 0;
    for (unsigned long u = 0; u < m; ++u)
        if (cond(u, m))
            ++count;
    return count;
}

} // namespace

Int count_roots_minus_one_brute(const Int& n) {
    if (n == 1)
        return 1; /* the single residue u = 0 satisfies u^2 = -1 (mod 1) */
    return count_roots_brute(n, [](unsigned long u, unsigned long m) {
        return (static_cast<unsigned __int128>(u) * u + 1) % m == 0;
    });
}

Int count_roots_omega_brute(const Int& n) {
    if (n == 1)
        return 1;
    return count_roots_brute(n, [](unsigned long u, unsigned long m) {
        return (static_cast<unsigned __int128>(u) * u + u + 1) % m == 0;
    });
}

namespace {

Int checked_pair(const Int& n, Int closed, Int brute, const char* what) {
    if (closed != brute)
        throw consistency_error(std::string(what) + ": closed form " + closed.get_str() +
                                " != brute-force count " + brute.get_str() + " at n = " + n.get_str());
    return closed;
}

} // namespace

Int count_roots_minus_one(const Int& n) {
    return checked_pair(n, count_roots_minus_one_closed(n), count_roots_minus_one_brute(n),
                        "count_roots_minus_one");
}

Int count_roots_omega(const Int& n) {
    return checked_pair(n, count_roots_omega_closed(n), count_roots_omega_brute(n),
                        "count_roots_omega");
}

} // namespace skm
