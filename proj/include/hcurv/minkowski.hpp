#pragma once

#include <array>

#include "hcurv/errors.hpp"

namespace hcurv {

/// Point or vector of Minkowski 4-space, signature (-,+,+,+).
/// H^3 is the upper sheet <x,x> = -1, x0 > 0.
struct AmbientVector {
    double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

double minkowski_dot(const AmbientVector& u, const AmbientVector& v);

/// Vector Minkowski-orthogonal to a, b, c (generalized cross product:
/// cofactor expansion with the metric sign applied to the timelike slot).
/// Throws DegenerateFrame when the inputs have numerical rank < 3.
AmbientVector lorentz_cross(const AmbientVector& a, const AmbientVector& b,
                            const AmbientVector& c);

/// Projection of w onto the tangent space of H^3 at x: w + <w,x> x.
AmbientVector project_tangent(const AmbientVector& x, const AmbientVector& w);

// Generic core shared with the jet-valued surface pipeline.

template <class T>
using Four = std::array<T, 4>;

template <class T>
T mdot4(const Four<T>& u, const Four<T>& v) {
    return -(u[0] * v[0]) + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

template <class T>
T det3x3(const std::array<std::array<T, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class T>
Four<T> cross4(const Four<T>& a, const Four<T>& b, const Four<T>& c) {
    const Four<T>* rows[3] = {&a, &b, &c};
    Four<T> out{};
    for (int mu = 0; mu < 4; ++mu) {
        std::array<std::array<T, 3>, 3> m{};
        for (int r = 0; r < 3; ++r) {
            int cc = 0;
            for (int col = 0; col < 4; ++col) {
                if (col == mu) continue;
                m[r][cc++] = (*rows[r])[col];
            }
        }
        T cof = det3x3(m);
        if (mu % 2 == 1) cof = -cof;
        out[mu] = (mu == 0) ? -cof : cof;
    }
    return out;
}

} // namespace hcurv
