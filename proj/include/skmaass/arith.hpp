#pragma once

#include "skmaass/common.hpp"

#include <vector>

namespace skm {

struct PrimePower {
    Int p;
    unsigned long e = 0;
    bool operator==(const PrimePower&) const = default;
};

/* Prime factorization, primes strictly ascending; empty for n = 1. */
using Factorization = std::vector<PrimePower>;

/* Deterministic Miller-Rabin (fixed base set, valid far beyond any input this
 * library ever factors). */
bool is_prime(const Int& n);

/* Trial division with a primality check on the remaining cofactor; n >= 1. */
Factorization factor(const Int& n);

Int unfactor(const Factorization& f);

/* All positive divisors of n >= 1, sorted ascending. */
std::vector<Int> divisors(const Int& n);

/* Exponent of the prime p in x; x != 0. */
unsigned long ord_p(const Int& x, const Int& p);

/* Kronecker symbol (a|n), full extension to all integers. */
int kronecker(const Int& a, const Int& n);

bool is_squarefree(const Int& n);

/* True iff d = 1, d squarefree with d = 1 (mod 4), or d = 4d' with d'
 * squarefree and d' = 2, 3 (mod 4). */
bool is_fundamental_discriminant(const Int& d);

/* Largest divisor of x supported on the primes of n; x != 0, n >= 2. */
Int smooth_part(const Int& x, const Int& n);

/* #{u mod n : u^2 = -1 (mod n)}, and #{u mod n : u^2 + u + 1 = 0 (mod n)}.
 * Each comes in a closed form (multiplicative, from the factorization of n)
 * and a brute-force count; the plain entry point computes both and throws
 * consistency_error if they ever disagree. */
Int count_roots_minus_one_closed(const Int& n);
Int count_roots_minus_one_brute(const Int& n);
Int count_roots_minus_one(const Int& n);
Int count_roots_omega_closed(const Int& n);
Int count_roots_omega_brute(const Int& n);
Int count_roots_omega(const Int& n);

} // namespace skm
