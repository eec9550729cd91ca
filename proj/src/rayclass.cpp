#include "skmaass/rayclass.hpp"

#include "skmaass/qform.hpp"

namespace skm {

Int u_of_d(const Int& d) {
    if (d == -3)
        return 3;
    if (d == -4)
        return 2;
    return 1;
}

Int class_number(const Int& disc) {
    return static_cast<unsigned long>(reduced_primitive_forms(disc).size());
}

Int raycl_size(const Int& d, const Int& n, bool check_oracle) {
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw std::domain_error("raycl_size: d must be a negative fundamental discriminant");
    if (n < 1)
        throw std::domain_error("raycl_size: n must be positive");
    if (n == 1)
        return class_number(d);
    Rat val = make_rat(class_number(d), u_of_d(d));
    val *= n;
    for (const auto& [p, e] : factor(n))
        val *= make_rat(p - kronecker(d, p), p);
    if (val.get_den() != 1)
        throw consistency_error("raycl_size: non-integral formula value");
    Int size = val.get_num();
    if (check_oracle) {
        const Int oracle = class_number(d * n * n);
        if (size != oracle)
            throw consistency_error("raycl_size: formula value " + size.get_str() +
                                    " != class number " + oracle.get_str() +
                                    " of the order of discriminant d n^2");
    }
    return size;
}

} // namespace skm
