#include "skmaass/theta.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skm {

namespace {

/* key layout: c8 in bits 0..20, b8 + 2^21 in bits 21..43, a8 in bits 44..63.
 * With all |entries| <= max_trace8() < 2^19, keys of two exponents can be
 * added field-wise without carries crossing field boundaries. */
constexpr std::uint64_t kBOffset = std::uint64_t(1) << 21;
constexpr std::uint64_t kZeroKey = kBOffset << 21;

} // namespace

ThetaSeries::ThetaSeries(long trace8_bound) : bound8_(trace8_bound) {
    if (trace8_bound < 0 || trace8_bound > max_trace8())
        throw std::domain_error("ThetaSeries: trace bound out of range");
}

std::uint64_t ThetaSeries::pack(long a8, long b8, long c8) {
    return (std::uint64_t(a8) << 44) | (std::uint64_t(b8 + (long)kBOffset) << 21) |
           std::uint64_t(c8);
}

void ThetaSeries::unpack(std::uint64_t key, long& a8, long& b8, long& c8) {
    a8 = long(key >> 44);
    b8 = long((key >> 21) & ((std::uint64_t(1) << 23) - 1)) - long(kBOffset);
    c8 = long(key & ((std::uint64_t(1) << 21) - 1));
}

long ThetaSeries::trace8(std::uint64_t key) {
    return long(key >> 44) + long(key & ((std::uint64_t(1) << 21) - 1));
}

std::uint64_t ThetaSeries::combine(std::uint64_t x, std::uint64_t y) {
    return x + y - kZeroKey;
}

void ThetaSeries::add(long a8, long b8, long c8, const Int& v) {
    if (a8 < 0 || c8 < 0 || a8 + c8 > bound8_ || b8 * b8 > 4 * a8 * c8)
        throw std::domain_error("ThetaSeries::add: exponent not PSD within the trace bound");
    terms_[pack(a8, b8, c8)] += v;
}

void ThetaSeries::prune_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
}

bool ThetaSeries::same_terms(const ThetaSeries& o) const {
    if (terms_.size() != o.terms_.size())
        return false;
    for (const auto& [k, v] : terms_) {
        auto it = o.terms_.find(k);
        if (it == o.terms_.end() || it->second != v)
            return false;
    }
    return true;
}

ThetaSeries ThetaSeries::one(long trace8_bound) {
    ThetaSeries s(trace8_bound);
    s.add(0, 0, 0, 1);
    return s;
}

std::vector<ThetaChar> even_characteristics() {
    std::vector<ThetaChar> out;
    for (int ai = 0; ai < 4; ++ai) {
        for (int bi = 0; bi < 4; ++bi) {
            ThetaChar ch{{ai >> 1, ai & 1}, {bi >> 1, bi & 1}};
            if (ch.is_even())
                out.push_back(ch);
        }
    }
    return out;
}

ThetaSeries theta_constant(const ThetaChar& ch, long trace_bound) {
    for (int x : {ch.a[0], ch.a[1], ch.b[0], ch.b[1]})
        if (x != 0 && x != 1)
            throw std::domain_error("theta_constant: characteristic entries must be 0 or 1");
    if (!ch.is_even())
        throw std::domain_error("theta_constant: odd characteristic has a vanishing constant");
    if (trace_bound < 0)
        throw std::domain_error("theta_constant: trace bound must be nonnegative");

    const long bound8 = 8 * trace_bound;
    ThetaSeries s(bound8);

    /* lattice vector n contributes at the exponent (m m^t)/2 with
     * m = 2n + a, weighted by (-1)^(n.b) times the parity of (a.b)/2 */
    const int base_sign = ((ch.a[0] * ch.b[0] + ch.a[1] * ch.b[1]) / 2) % 2 ? -1 : 1;
    long umax = 0;
    while ((umax + 1) * (umax + 1) <= bound8)
        ++umax;
    for (long u = -umax; u <= umax; ++u) {
        if (((u ^ ch.a[0]) & 1) != 0)
            continue;
        for (long v = -umax; v <= umax; ++v) {
            if (((v ^ ch.a[1]) & 1) != 0)
                continue;
            if (u * u + v * v > bound8)
                continue;
            const long n1 = (u - ch.a[0]) / 2;
            const long n2 = (v - ch.a[1]) / 2;
            const int sign = base_sign * (((n1 * ch.b[0] + n2 * ch.b[1]) & 1) ? -1 : 1);
            s.add(u * u, 2 * u * v, v * v, sign);
        }
    }
    s.prune_zeros();
    return s;
}

namespace {

struct FlatTerm {
    long tr;
    std::uint64_t key;
    const Int* coeff;
};

/* y flattened and sorted by trace; cut[t] = number of terms of trace <= t */
void flatten_sorted(const ThetaSeries& y, long bound, std::vector<FlatTerm>& flat,
                    std::vector<std::size_t>& cut) {
    flat.clear();
    flat.reserve(y.size());
    for (const auto& [k, v] : y.terms()) {
        if (v == 0)
            continue;
        const long t = ThetaSeries::trace8(k);
        if (t <= bound)
            flat.push_back({t, k, &v});
    }
    std::sort(flat.begin(), flat.end(), [](const FlatTerm& a, const FlatTerm& b) {
        return a.tr != b.tr ? a.tr < b.tr : a.key < b.key;
    });
    cut.assign(static_cast<std::size_t>(bound) + 1, 0);
    for (const FlatTerm& f : flat)
        ++cut[static_cast<std::size_t>(f.tr)];
    std::size_t acc = 0;
    for (std::size_t t = 0; t < cut.size(); ++t) {
        acc += cut[t];
        cut[t] = acc;
    }
}

void accumulate_range(const std::vector<FlatTerm>& flat, const std::vector<std::size_t>& cut,
                      long bound, std::unordered_map<std::uint64_t, Int>& out, std::size_t begin,
                      std::size_t end,
                      const std::vector<const std::pair<const std::uint64_t, Int>*>& xs) {
    for (std::size_t i = begin; i < end; ++i) {
        const std::uint64_t kx = xs[i]->first;
        const Int& vx = xs[i]->second;
        const long budget = bound - ThetaSeries::trace8(kx);
        if (budget < 0)
            continue;
        const std::size_t stop = cut[static_cast<std::size_t>(budget)];
        for (std::size_t j = 0; j < stop; ++j) {
            Int& acc = out[ThetaSeries::combine(kx, flat[j].key)];
            mpz_addmul(acc.get_mpz_t(), vx.get_mpz_t(), flat[j].coeff->get_mpz_t());
        }
    }
}

std::vector<const std::pair<const std::uint64_t, Int>*> term_pointers(const ThetaSeries& x) {
    std::vector<const std::pair<const std::uint64_t, Int>*> xs;
    xs.reserve(x.size());
    for (const auto& kv : x.terms())
        if (kv.second != 0)
            xs.push_back(&kv);
    return xs;
}

} // namespace

ThetaSeries theta_mul_serial(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound) {
    ThetaSeries out(trace8_bound);
    std::vector<FlatTerm> flat;
    std::vector<std::size_t> cut;
    flatten_sorted(y, trace8_bound, flat, cut);
    const auto xs = term_pointers(x);
    out.terms().reserve(x.size() + y.size());
    accumulate_range(flat, cut, trace8_bound, out.terms(), 0, xs.size(), xs);
    out.prune_zeros();
    return out;
}

ThetaSeries theta_mul_parallel(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound) {
#ifndef _OPENMP
    return theta_mul_serial(x, y, trace8_bound);
#else
    const int threads = omp_get_max_threads();
    if (threads <= 1 || x.size() < 1024)
        return theta_mul_serial(x, y, trace8_bound);

    ThetaSeries out(trace8_bound);
    std::vector<FlatTerm> flat;
    std::vector<std::size_t> cut;
    flatten_sorted(y, trace8_bound, flat, cut);
    const auto xs = term_pointers(x);
    auto& res = out.terms();
    res.reserve(x.size() + y.size());

#pragma omp parallel
    {
        std::unordered_map<std::uint64_t, Int> local;
        local.reserve(1024);
#pragma omp for schedule(dynamic, 256) nowait
        for (long i = 0; i < static_cast<long>(xs.size()); ++i)
            accumulate_range(flat, cut, trace8_bound, local, i, i + 1, xs);
        /* exact integers: merge order cannot change the result */
#pragma omp critical
        for (auto& [k, v] : local) {
            auto [it, fresh] = res.try_emplace(k, 0);
            if (fresh)
                it->second = std::move(v);
            else
                it->second += v;
        }
    }
    out.prune_zeros();
    return out;
#endif
}

ThetaSeries theta_mul(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound) {
#ifdef _OPENMP
    if (omp_get_max_threads() > 1)
        return theta_mul_parallel(x, y, trace8_bound);
#endif
    return theta_mul_serial(x, y, trace8_bound);
}

} // namespace skm
