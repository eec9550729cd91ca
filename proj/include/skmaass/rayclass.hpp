#pragma once

#include "skmaass/arith.hpp"

namespace skm {

/* Half the unit count of the imaginary quadratic order of fundamental
 * discriminant d: 3 for -3, 2 for -4, 1 otherwise. */
Int u_of_d(const Int& d);

/* Form class number h(disc): number of reduced primitive positive definite
 * forms of the given negative discriminant. */
Int class_number(const Int& disc);

/* Ray class number modulo n for the maximal order of fundamental discriminant
 * d < 0:
 *     |Cl_d(n)| = h(d)/u(d) * n * prod_{p | n} (1 - kronecker(d, p)/p)
 * for n > 1, and h(d) for n = 1.  The value coincides with the class number
 * of the order of discriminant d n^2; unless disabled, that count is computed
 * independently and any disagreement is a hard error. */
Int raycl_size(const Int& d, const Int& n, bool check_oracle = true);

} // namespace skm
