#include "hcurv/minkowski.hpp"

#include <cmath>

namespace hcurv {

namespace {

Four<double> toArray(const AmbientVector& v) { return {v.x0, v.x1, v.x2, v.x3}; }

double enorm(const AmbientVector& v) {
    return std::sqrt(v.x0 * v.x0 + v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3);
}

} // namespace

double minkowski_dot(const AmbientVector& u, const AmbientVector& v) {
    return -(u.x0 * v.x0) + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

AmbientVector lorentz_cross(const AmbientVector& a, const AmbientVector& b,
                            const AmbientVector& c) {
    const auto d = cross4(toArray(a), toArray(b), toArray(c));
    const AmbientVector out{d[0], d[1], d[2], d[3]};
    const double scale = enorm(a) * enorm(b) * enorm(c);
    if (!(enorm(out) > 1e-12 * scale))
        throw DegenerateFrame("lorentz_cross: inputs have numerical rank < 3");
    return out;
}

AmbientVector project_tangent(const AmbientVector& x, const AmbientVector& w) {
    const double s = minkowski_dot(w, x);
    return {w.x0 + s * x.x0, w.x1 + s * x.x1, w.x2 + s * x.x2, w.x3 + s * x.x3};
}

} // namespace hcurv
