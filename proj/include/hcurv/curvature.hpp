#pragma once

#include "hcurv/surface.hpp"

namespace hcurv {

/// Test instrumentation: deliberate defects injected by the test harness to
/// prove the audits have teeth. The CLI never sets these.
struct MutationFlags {
    bool flip_q_rhs = false;       // negate the right side of formula (Q)
    bool flip_q_gradterm = false;  // mis-sign the A^<- pairing term of the left side
};

/// Curvature of the second fundamental form and the identity residuals.
/// kii: Brioschi applied to (e,f,g). base = H K/(K+1).
/// gradterm = I(grad K, A^<- grad K) / (8 (K+1)^2).
/// p = kii - base + gradterm (non-negative remainder, computed as a residual).
/// psi = kii - K/sqrt(detA). qres = scaled residual of formula (Q).
struct CurvatureRecord {
    double kii;
    double base;
    double gradterm;
    double p;
    double psi;
    double qres;
};

/// Gaussian curvature of a 2D metric from its coefficient jets (Brioschi
/// determinant formula; derivatives up to second order). Requires jets of
/// order >= 2 and EG - F^2 > 0 at the point.
double brioschi_k(const Jet& E, const Jet& F, const Jet& G);

CurvatureRecord curvature_from(const SurfaceJets& sj,
                               const MutationFlags& mut = {});

CurvatureRecord kii_at(const RadialGraph& S, double u, double v);
double erard_q_residual_at(const RadialGraph& S, double u, double v);

/// Full per-point evaluation: one jet pipeline pass, everything downstream
/// audits and dumps need. Partials of H, K, detA are retained for gradient
/// seeding.
struct PointEval {
    double theta, phi;
    FormsRecord forms;
    ShapeRecord shape;
    CurvatureRecord curv;
    double Hu, Hv, Ku, Kv, dAu, dAv;
};

PointEval evaluate_point(const RadialGraph& S, double u, double v,
                         const MutationFlags& mut = {});

} // namespace hcurv
