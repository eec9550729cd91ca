#pragma once

#include "skmaass/qform.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace skm {

/* Exact Fourier coefficients of a degree-2 Siegel cusp form of weight k on
 * the paramodular-style congruence subgroup of levels (n1, n2), n1 | n2.
 * Keys are positive definite half-integral matrices (a, b, c); the table is
 * complete for every key with max(a, c) <= bound, and stores only nonzero
 * values. */
struct FourierTable {
    long k = 0;
    Int n1{1}, n2{1};
    long bound = 0;
    std::map<QForm, Rat> coeffs;

    bool in_bound(const QForm& t) const;

    /* Absent in-bound keys are exact zeros; outside the bound the value is
     * unknown and asking for it is an error, never a silent zero. */
    Rat coeff(const QForm& t) const;

    void set(const QForm& t, Rat v);
};

struct sfc_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Plain-text exchange format:
 *     SFC 1
 *     k <weight> N1 <n1> N2 <n2> bound <bound>
 *     <a> <b> <c> <num>/<den>
 *     ...
 * one coefficient per line, keys unique, positive definite and within the
 * bound.  Parse failures carry the offending line number. */
FourierTable read_sfc(std::istream& in, const std::string& source = "<stream>");
FourierTable read_sfc_file(const std::string& path);
void write_sfc(std::ostream& out, const FourierTable& t);
void write_sfc_file(const std::string& path, const FourierTable& t);

} // namespace skm
