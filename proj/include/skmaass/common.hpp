#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <utility>

namespace skm {

using Int = mpz_class;
using Rat = mpq_class;

/* Two values that were computed along independent routes and must agree did
 * not.  Always indicates a bug (or a corrupted input table), never bad user
 * arguments. */
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* A coefficient was requested outside the completeness bound of a table.
 * Distinct from "coefficient is zero": outside the bound we do not know. */
struct bound_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

inline Rat make_rat(Int num, Int den) {
    if (den == 0)
        throw std::domain_error("make_rat: zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

} // namespace skm
