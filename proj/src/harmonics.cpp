#include "hcurv/harmonics.hpp"

#include <cmath>

namespace hcurv {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// Associated Legendre P_l^m(cos theta) with sin theta passed separately,
// positive convention (no Condon-Shortley phase).
Jet assocLegendre(int l, int am, const Jet& x, const Jet& s) {
    switch (l * 10 + am) {
        case 0:  return Jet::constant(1.0);
        case 10: return x;
        case 11: return s;
        case 20: return (x * x * 3.0 - 1.0) * 0.5;
        case 21: return s * x * 3.0;
        case 22: return s * s * 3.0;
        case 30: return (x * x * x * 5.0 - x * 3.0) * 0.5;
        case 31: return (x * x * 5.0 - 1.0) * s * 1.5;
        case 32: return x * s * s * 15.0;
        case 33: return s * s * s * 15.0;
        case 40: return (x * x * x * x * 35.0 - x * x * 30.0 + 3.0) * 0.125;
        case 41: return (x * x * x * 7.0 - x * 3.0) * s * 2.5;
        case 42: return (x * x * 7.0 - 1.0) * s * s * 7.5;
        case 43: return x * s * s * s * 105.0;
        case 44: return s * s * s * s * 105.0;
        default:
            throw DomainError("real_sph_harm: unsupported (l, m)");
    }
}

} // namespace

Jet real_sph_harm(int l, int m, const Jet& x, const Jet& s, const Jet& phi) {
    const int am = std::abs(m);
    if (l < 0 || l > 4 || am > l)
        throw DomainError("real_sph_harm: l must be 0..4 and |m| <= l");
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI)
                                  * factorial(l - am) / factorial(l + am));
    const Jet p = assocLegendre(l, am, x, s);
    if (m == 0) return p * norm;
    const double c = std::sqrt(2.0) * norm;
    if (m > 0) return p * jcos(phi * double(m)) * c;
    return p * jsin(phi * double(am)) * c;
}

} // namespace hcurv
