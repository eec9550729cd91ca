#pragma once

#include "skmaass/common.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace skm {

/* Genus-2 theta characteristic [a; b], entries in {0, 1}; even when a.b is. */
struct ThetaChar {
    std::array<int, 2> a{0, 0};
    std::array<int, 2> b{0, 0};
    bool is_even() const { return (a[0] * b[0] + a[1] * b[1]) % 2 == 0; }
    bool operator==(const ThetaChar&) const = default;
};

/* The 10 even characteristics, deterministic order. */
std::vector<ThetaChar> even_characteristics();

/* Sparse q-expansion sum_T coeff(T) e(tr(T Z)) with exponents T on the
 * (1/8)-integral lattice.  A term is keyed by (a8, b8, c8) standing for
 * T = [[a8/8, b8/16], [b8/16, c8/8]]; exponents are positive semidefinite and
 * a series is complete for every T with a8 + c8 <= trace8_bound. */
class ThetaSeries {
public:
    explicit ThetaSeries(long trace8_bound);

    long trace8_bound() const { return bound8_; }
    const std::unordered_map<std::uint64_t, Int>& terms() const { return terms_; }
    std::unordered_map<std::uint64_t, Int>& terms() { return terms_; }
    std::size_t size() const { return terms_.size(); }

    void add(long a8, long b8, long c8, const Int& v);
    void prune_zeros();
    bool same_terms(const ThetaSeries& o) const;

    static ThetaSeries one(long trace8_bound);

    static std::uint64_t pack(long a8, long b8, long c8);
    static void unpack(std::uint64_t key, long& a8, long& b8, long& c8);
    static long trace8(std::uint64_t key);
    /* key of the sum of the two exponents */
    static std::uint64_t combine(std::uint64_t x, std::uint64_t y);

    static constexpr long max_trace8() { return (1L << 19) - 1; }

private:
    long bound8_;
    std::unordered_map<std::uint64_t, Int> terms_;
};

/* q-expansion of the theta constant with the given even characteristic,
 * complete for exponent traces <= trace_bound (an ordinary integer bound;
 * internally everything lives on the 1/8 lattice). */
ThetaSeries theta_constant(const ThetaChar& ch, long trace_bound);

/* Truncated product of sparse series: all coefficients with
 * trace8 <= trace8_bound, exactly.  The serial kernel is the reference; the
 * parallel kernel must produce bit-identical tables (exact integer
 * arithmetic, order-independent accumulation). */
ThetaSeries theta_mul_serial(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound);
ThetaSeries theta_mul_parallel(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound);
ThetaSeries theta_mul(const ThetaSeries& x, const ThetaSeries& y, long trace8_bound);

} // namespace skm
