#include "hcurv/curvature.hpp"

#include <cmath>

namespace hcurv {

namespace {

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// (da)^T M^{-1} (db) for symmetric M = [[m11, m12], [m12, m22]].
double pairInv(double m11, double m12, double m22, const double da[2],
               const double db[2]) {
    const double det = m11 * m22 - m12 * m12;
    return (da[0] * (m22 * db[0] - m12 * db[1])
          + da[1] * (-m12 * db[0] + m11 * db[1])) / det;
}

} // namespace

double brioschi_k(const Jet& E, const Jet& F, const Jet& G) {
    if (E.order() < 2 || F.order() < 2 || G.order() < 2)
        throw DomainError("brioschi_k needs coefficient jets of order >= 2");
    const double E0 = E.value(), F0 = F.value(), G0 = G.value();
    const double W = E0 * G0 - F0 * F0;
    if (!(W > 0.0)) throw DegenerateMetric("brioschi_k: EG - F^2 <= 0");
    const double Eu = E.deriv(1, 0), Ev = E.deriv(0, 1), Evv = E.deriv(0, 2);
    const double Gu = G.deriv(1, 0), Gv = G.deriv(0, 1), Guu = G.deriv(2, 0);
    const double Fu = F.deriv(1, 0), Fv = F.deriv(0, 1), Fuv = F.deriv(1, 1);
    const double m1[3][3] = {
        {-Evv / 2 + Fuv - Guu / 2, Eu / 2, Fu - Ev / 2},
        {Fv - Gu / 2, E0, F0},
        {Gv / 2, F0, G0},
    };
    const double m2[3][3] = {
        {0.0, Ev / 2, Gu / 2},
        {Ev / 2, E0, F0},
        {Gu / 2, F0, G0},
    };
    return (det3(m1) - det3(m2)) / (W * W);
}

CurvatureRecord curvature_from(const SurfaceJets& sj, const MutationFlags& mut) {
    const double E0 = sj.E.value(), F0 = sj.F.value(), G0 = sj.G.value();
    const double e0 = sj.e.value(), f0 = sj.f.value(), g0 = sj.g.value();
    const double H = sj.H.value(), dA = sj.detA.value(), K = sj.K.value();

    CurvatureRecord r;
    r.kii = brioschi_k(sj.e, sj.f, sj.g);
    r.base = H * K / (K + 1.0);

    const double dK[2] = {sj.K.deriv(1, 0), sj.K.deriv(0, 1)};
    r.gradterm = pairInv(e0, f0, g0, dK, dK) / (8.0 * (K + 1.0) * (K + 1.0));
    r.p = r.kii - r.base + r.gradterm;
    r.psi = r.kii - K / std::sqrt(dA);

    const Jet hh = sj.H * sj.H / sj.detA;
    const double dHH[2] = {hh.deriv(1, 0), hh.deriv(0, 1)};
    const double dH[2] = {sj.H.deriv(1, 0), sj.H.deriv(0, 1)};
    const double ddA[2] = {sj.detA.deriv(1, 0), sj.detA.deriv(0, 1)};
    double gradpair = dA / 2.0 * pairInv(e0, f0, g0, dHH, dH);
    if (mut.flip_q_gradterm) gradpair = -gradpair;
    const double lhs = gradpair - 0.25 * pairInv(E0, F0, G0, dHH, ddA);
    double rhs = 2.0 * H * (r.kii - H * K / dA) * (H * H - dA);
    if (mut.flip_q_rhs) rhs = -rhs;
    r.qres = (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return r;
}

CurvatureRecord kii_at(const RadialGraph& S, double u, double v) {
    return curvature_from(surface_jets(S, u, v));
}

double erard_q_residual_at(const RadialGraph& S, double u, double v) {
    return curvature_from(surface_jets(S, u, v)).qres;
}

PointEval evaluate_point(const RadialGraph& S, double u, double v,
                         const MutationFlags& mut) {
    const SurfaceJets sj = surface_jets(S, u, v);
    PointEval p;
    p.theta = u;
    p.phi = v;
    p.forms = {sj.E.value(), sj.F.value(), sj.G.value(),
               sj.e.value(), sj.f.value(), sj.g.value()};
    p.shape = shape_from(sj);
    p.curv = curvature_from(sj, mut);
    p.Hu = sj.H.deriv(1, 0);
    p.Hv = sj.H.deriv(0, 1);
    p.Ku = sj.K.deriv(1, 0);
    p.Kv = sj.K.deriv(0, 1);
    p.dAu = sj.detA.deriv(1, 0);
    p.dAv = sj.detA.deriv(0, 1);
    return p;
}

} // namespace hcurv
