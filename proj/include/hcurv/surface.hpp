#pragma once

#include <array>
#include <string>
#include <vector>

#include "hcurv/jet.hpp"
#include "hcurv/minkowski.hpp"

namespace hcurv {

/// One spherical-harmonic perturbation of the radius function.
struct Term {
    int l = 0;
    int m = 0;
    double amp = 0.0;
};

/// Radial graph over the unit sphere: X(theta,phi) = (cosh rho, sinh rho n)
/// with rho = r0 + sum amp Y_{l,m}. Immutable once validated; the normal
/// orientation sign is fixed during validation so that e > 0.
class RadialGraph {
public:
    double r0() const { return r0_; }
    const std::vector<Term>& terms() const { return terms_; }
    double normal_sign() const { return sign_; }

    friend RadialGraph make_radial_graph(double r0, std::vector<Term> terms,
                                         bool require_positive_k);

private:
    RadialGraph(double r0, std::vector<Term> terms)
        : r0_(r0), terms_(std::move(terms)) {}

    double r0_;
    std::vector<Term> terms_;
    double sign_ = 1.0;
};

/// Validates on the 32x64 Gauss-Legendre grid: frame regularity, then
/// second-form definiteness (e > 0, eg - f^2 > 0), then rho > 0 at every
/// node, and K > 0 when requested. Errors name the failing node.
RadialGraph make_radial_graph(double r0, std::vector<Term> terms,
                              bool require_positive_k = false);

/// The constant radial graph: umbilic, A = coth(r) Id.
RadialGraph geodesic_sphere(double r);

struct PointFrame {
    AmbientVector X, Xu, Xv, N;
};

struct FormsRecord {
    double E, F, G;
    double e, f, g;
};

struct ShapeRecord {
    double a11, a12, a21, a22;
    double H, detA, K;
    double kappa1, kappa2;  // kappa1 >= kappa2
};

enum class Field { H, K, DetA, HoverDetA, H2overDetA };

struct GradRecord {
    double fu, fv;          // chart partials
    double grad1, grad2;    // I-gradient components in the chart basis
    double norm2;           // I(grad f, grad f)
};

/// Jet-valued evaluation state at one chart point; everything downstream
/// (forms, shape, curvature of II, gradients) reads from it.
struct SurfaceJets {
    std::array<Jet, 4> X, Xu, Xv, N;
    Jet rho;
    Jet E, F, G, e, f, g;
    Jet W;  // EG - F^2
    Jet H, K, detA;
};

/// Order-4 jets of the four ambient components of the immersion.
/// Rejects chart points with min(u, pi - u) < 1e-3 (PoleProximity).
std::array<Jet, 4> immersion_jet(const RadialGraph& S, double u, double v);

SurfaceJets surface_jets(const RadialGraph& S, double u, double v);

PointFrame frame_at(const RadialGraph& S, double u, double v);
FormsRecord forms_at(const RadialGraph& S, double u, double v);
ShapeRecord shape_at(const RadialGraph& S, double u, double v);
GradRecord grad_at(const RadialGraph& S, Field field, double u, double v);

ShapeRecord shape_from(const SurfaceJets& sj);
GradRecord grad_from(const SurfaceJets& sj, Field field);

/// Jet of the requested scalar field (order 2).
Jet field_jet(const SurfaceJets& sj, Field field);

} // namespace hcurv
