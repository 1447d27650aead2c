#include "nhosc/hermite.hpp"

#include <cmath>
#include <string>

#include "nhosc/errors.hpp"

namespace nhosc {

namespace {

void check_index(int n) {
    if (n < 0 || n > kHermiteMaxIndex)
        throw IndexTooLarge("Hermite index must be in [0, 200], got " +
                            std::to_string(n));
}

cplx ldexp2(cplx v, int e) {
    return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
}

}  // namespace

cplx hermite(int n, cplx z) {
    check_index(n);
    if (n == 0) return 1.0;
    cplx hm1 = 1.0;    // H_0
    cplx h = 2.0 * z;  // H_1
    for (int k = 1; k < n; ++k) {
        const cplx hp1 = 2.0 * z * h - 2.0 * double(k) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

ScaledHermite hermite_normalized(int n, cplx z) {
    check_index(n);
    // A_{k+1} = sqrt(2/(k+1)) z A_k - sqrt(k/(k+1)) A_{k-1}, rescaled by
    // powers of two whenever the mantissa leaves [2^-256, 2^256].
    cplx am1 = 1.0;  // A_0
    long exp_am1 = 0;
    if (n == 0) return {am1, 0};
    cplx a = std::sqrt(2.0) * z;  // A_1
    long exp_a = 0;
    for (int k = 1; k < n; ++k) {
        const double kd = double(k);
        const cplx am1_adj = ldexp2(am1, int(exp_am1 - exp_a));
        cplx ap1 = std::sqrt(2.0 / (kd + 1.0)) * z * a -
                   std::sqrt(kd / (kd + 1.0)) * am1_adj;
        long exp_ap1 = exp_a;
        const double mag = std::abs(ap1);
        if (mag > std::ldexp(1.0, 256)) {
            ap1 = ldexp2(ap1, -256);
            exp_ap1 += 256;
        } else if (mag != 0.0 && mag < std::ldexp(1.0, -256)) {
            ap1 = ldexp2(ap1, 256);
            exp_ap1 -= 256;
        }
        am1 = a;
        exp_am1 = exp_a;
        a = ap1;
        exp_a = exp_ap1;
    }
    return {a, exp_a};
}

}  // namespace nhosc
