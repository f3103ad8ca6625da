#include "hcurv/quadrature.hpp"

#include <cmath>
#include <string>

#include "hcurv/errors.hpp"
#include "hcurv/parallel.hpp"

namespace hcurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Legendre P_n and its derivative at x, by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Newton iteration from the Chebyshev-angle initial guess. Roots come out
// in descending x, i.e. ascending theta.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int k = 0; k < n; ++k) {
        double xi = std::cos(kPi * (k + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, xi, p, dp);
            const double dx = p / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, xi, p, dp);
        x[k] = xi;
        w[k] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

std::string node_label(double u, double v) {
    return "(theta=" + std::to_string(u) + ", phi=" + std::to_string(v) + ")";
}

} // namespace

SphereGrid sphere_grid(int ntheta, int nphi) {
    if (ntheta < 8 || nphi < 16)
        throw GridTooCoarse("grid too coarse: need ntheta >= 8 and nphi >= 16, got " +
                            std::to_string(ntheta) + "x" + std::to_string(nphi));
    SphereGrid g;
    g.ntheta = ntheta;
    g.nphi = nphi;
    std::vector<double> x, w;
    legendre_nodes(ntheta, x, w);
    g.theta.resize(ntheta);
    g.wtheta = std::move(w);
    for (int i = 0; i < ntheta; ++i) g.theta[i] = std::acos(x[i]);
    g.wphi = 2.0 * kPi / nphi;
    g.phi.resize(nphi);
    for (int j = 0; j < nphi; ++j) g.phi[j] = g.wphi * j;
    return g;
}

double integrate(const RadialGraph& S,
                 const std::function<double(const SurfaceJets&)>& field,
                 const SphereGrid& grid, Measure measure) {
    const int nt = grid.ntheta, np = grid.nphi;
    std::vector<double> contrib(static_cast<size_t>(nt) * np);
    parallel_rows(nt, [&](int i) {
        const double st = std::sin(grid.theta[i]);
        for (int j = 0; j < np; ++j) {
            const SurfaceJets sj = surface_jets(S, grid.theta[i], grid.phi[j]);
            const double Wv = sj.W.value();
            if (!(Wv > 0.0))
                throw DegenerateMetric("EG - F^2 not positive at " +
                                       node_label(grid.theta[i], grid.phi[j]));
            double area = std::sqrt(Wv) / st;
            if (measure == Measure::dOmegaII) {
                const double dAv = sj.detA.value();
                if (!(dAv > 0.0))
                    throw DegenerateMetric("detA not positive at " +
                                           node_label(grid.theta[i], grid.phi[j]));
                area *= std::sqrt(dAv);
            }
            contrib[static_cast<size_t>(i) * np + j] =
                grid.wtheta[i] * grid.wphi * field(sj) * area;
        }
    });
    return pairwise_sum(contrib);
}

GridEval evaluate_grid(const RadialGraph& S, const SphereGrid& grid,
                       const MutationFlags& mut) {
    GridEval ge;
    ge.grid = grid;
    ge.nodes.resize(static_cast<size_t>(grid.ntheta) * grid.nphi);
    parallel_rows(grid.ntheta, [&](int i) {
        for (int j = 0; j < grid.nphi; ++j)
            ge.nodes[static_cast<size_t>(i) * grid.nphi + j] =
                evaluate_point(S, grid.theta[i], grid.phi[j], mut);
    });
    return ge;
}

double integrate_values(const GridEval& ge,
                        const std::function<double(const PointEval&)>& field,
                        Measure measure) {
    const SphereGrid& g = ge.grid;
    std::vector<double> contrib(ge.nodes.size());
    for (size_t idx = 0; idx < ge.nodes.size(); ++idx) {
        const PointEval& pe = ge.nodes[idx];
        const int i = static_cast<int>(idx) / g.nphi;
        const double Wv = pe.forms.E * pe.forms.G - pe.forms.F * pe.forms.F;
        if (!(Wv > 0.0))
            throw DegenerateMetric("EG - F^2 not positive at " +
                                   node_label(pe.theta, pe.phi));
        double area = std::sqrt(Wv) / std::sin(g.theta[i]);
        if (measure == Measure::dOmegaII) {
            if (!(pe.shape.detA > 0.0))
                throw DegenerateMetric("detA not positive at " +
                                       node_label(pe.theta, pe.phi));
            area *= std::sqrt(pe.shape.detA);
        }
        contrib[idx] = g.wtheta[i] * g.wphi * field(pe) * area;
    }
    return pairwise_sum(contrib);
}

GaussBonnetReport gauss_bonnet_report(const RadialGraph& S,
                                      const SphereGrid& grid) {
    const int nt = grid.ntheta, np = grid.nphi;
    std::vector<double> cK(static_cast<size_t>(nt) * np);
    std::vector<double> cKII(cK.size());
    parallel_rows(nt, [&](int i) {
        const double st = std::sin(grid.theta[i]);
        for (int j = 0; j < np; ++j) {
            const SurfaceJets sj = surface_jets(S, grid.theta[i], grid.phi[j]);
            const double Wv = sj.W.value();
            const double dAv = sj.detA.value();
            if (!(Wv > 0.0) || !(dAv > 0.0))
                throw DegenerateMetric("degenerate metric at " +
                                       node_label(grid.theta[i], grid.phi[j]));
            const double base = grid.wtheta[i] * grid.wphi * std::sqrt(Wv) / st;
            const size_t idx = static_cast<size_t>(i) * np + j;
            cK[idx] = base * sj.K.value();
            cKII[idx] = base * std::sqrt(dAv) * brioschi_k(sj.e, sj.f, sj.g);
        }
    });
    GaussBonnetReport r;
    r.intK_dOmega = pairwise_sum(cK);
    r.intKII_dOmegaII = pairwise_sum(cKII);
    const double target = 4.0 * kPi;
    r.defect1 = std::abs(r.intK_dOmega - target) / target;
    r.defect2 = std::abs(r.intKII_dOmegaII - target) / target;
    return r;
}

} // namespace hcurv
