#pragma once

#include <functional>
#include <vector>

#include "hcurv/curvature.hpp"
#include "hcurv/surface.hpp"

namespace hcurv {

/// Product grid on the chart: Gauss-Legendre nodes in cos(theta), uniform
/// nodes in phi. wtheta are the weights in the cos(theta) variable, so the
/// weight totals are 2 and 2*pi respectively.
struct SphereGrid {
    int ntheta = 0;
    int nphi = 0;
    std::vector<double> theta;   // ascending, acos of the GL nodes
    std::vector<double> wtheta;  // GL weights
    std::vector<double> phi;     // 2*pi*j/nphi
    double wphi = 0.0;           // 2*pi/nphi
};

/// Throws GridTooCoarse unless ntheta >= 8 and nphi >= 16.
SphereGrid sphere_grid(int ntheta, int nphi);

/// Area element choice: the induced metric or the second fundamental form
/// (which scales the element by sqrt(detA)).
enum class Measure { dOmega, dOmegaII };

/// Integral of the field over the surface. Per node the integrand carries
/// sqrt(EG - F^2)/sin(theta), converting the (cos theta, phi) weights to the
/// surface measure. Deterministic pairwise summation in theta-major order.
double integrate(const RadialGraph& S,
                 const std::function<double(const SurfaceJets&)>& field,
                 const SphereGrid& grid, Measure measure = Measure::dOmega);

/// One full evaluation pass over a grid, theta-major (index i*nphi + j).
/// The audit suite reuses this so each surface is evaluated once per grid.
struct GridEval {
    SphereGrid grid;
    std::vector<PointEval> nodes;
};

GridEval evaluate_grid(const RadialGraph& S, const SphereGrid& grid,
                       const MutationFlags& mut = {});

/// Same summation as integrate, reading a completed grid pass.
double integrate_values(const GridEval& ge,
                        const std::function<double(const PointEval&)>& field,
                        Measure measure = Measure::dOmega);

/// Total curvature of both metrics against 4*pi (chi = 2). Defects are
/// relative.
struct GaussBonnetReport {
    double intK_dOmega = 0.0;
    double intKII_dOmegaII = 0.0;
    double defect1 = 0.0;
    double defect2 = 0.0;
};

GaussBonnetReport gauss_bonnet_report(const RadialGraph& S,
                                      const SphereGrid& grid);

} // namespace hcurv
