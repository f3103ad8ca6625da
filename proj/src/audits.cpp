#include "hcurv/audits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hcurv/errors.hpp"
#include "hcurv/parallel.hpp"

namespace hcurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string node_label(double u, double v) {
    return "(theta=" + std::to_string(u) + ", phi=" + std::to_string(v) + ")";
}

double wrap_phi(double v) {
    v = std::fmod(v, 2.0 * kPi);
    if (v < 0.0) v += 2.0 * kPi;
    return v;
}

double chart_distance(double u1, double v1, double u2, double v2) {
    double dv = std::abs(v1 - v2);
    dv = std::min(dv, 2.0 * kPi - dv);
    return std::hypot(u1 - u2, dv);
}

// Largest node separation in either chart direction.
double grid_spacing(const SphereGrid& g) {
    double dth = 0.0;
    for (int i = 0; i + 1 < g.ntheta; ++i)
        dth = std::max(dth, g.theta[i + 1] - g.theta[i]);
    return std::max(dth, g.wphi);
}

size_t first_min_index(const std::vector<double>& vals, double tie_eps) {
    const double mn = *std::min_element(vals.begin(), vals.end());
    const double tie = tie_eps * std::max(1.0, std::abs(mn));
    for (size_t k = 0; k < vals.size(); ++k)
        if (vals[k] <= mn + tie) return k;
    return 0;
}

size_t first_max_index(const std::vector<double>& vals, double tie_eps) {
    const double mx = *std::max_element(vals.begin(), vals.end());
    const double tie = tie_eps * std::max(1.0, std::abs(mx));
    for (size_t k = 0; k < vals.size(); ++k)
        if (vals[k] >= mx - tie) return k;
    return 0;
}

Extreme scan_extreme(const std::string& name, const GridEval& ge,
                     const std::vector<double>& vals, double tie_eps) {
    Extreme ex;
    ex.name = name;
    const size_t imn = first_min_index(vals, tie_eps);
    const size_t imx = first_max_index(vals, tie_eps);
    ex.min = vals[imn];
    ex.argmin_theta = ge.nodes[imn].theta;
    ex.argmin_phi = ge.nodes[imn].phi;
    ex.max = vals[imx];
    ex.argmax_theta = ge.nodes[imx].theta;
    ex.argmax_phi = ge.nodes[imx].phi;
    return ex;
}

double max_abs(const std::vector<double>& vals) {
    double m = 0.0;
    for (double x : vals) m = std::max(m, std::abs(x));
    return m;
}

double mean_of(const std::vector<double>& vals) {
    return pairwise_sum(vals) / static_cast<double>(vals.size());
}

AuditReport base_report(const std::string& audit, const GridEval& ge,
                        const std::string& surface_id) {
    AuditReport r;
    r.audit = audit;
    r.surface = surface_id;
    r.grid = {ge.grid.ntheta, ge.grid.nphi};
    return r;
}

void require_positive_k(const GridEval& ge) {
    for (const PointEval& pe : ge.nodes)
        if (!(pe.shape.K > 0.0))
            throw NegativeCurvature("K <= 0 at " + node_label(pe.theta, pe.phi));
}

double deficit_of(const PointEval& pe) {
    return (pe.shape.H * pe.shape.H - pe.shape.detA) / pe.shape.detA;
}

// Chart partials of the audit targets, from the retained point data.
void target_partials(const PointEval& pe, Field target, double& f, double& fu,
                     double& fv) {
    if (target == Field::H) {
        f = pe.shape.H;
        fu = pe.Hu;
        fv = pe.Hv;
    } else {
        const double dA = pe.shape.detA;
        f = pe.shape.H / dA;
        fu = (pe.Hu * dA - pe.shape.H * pe.dAu) / (dA * dA);
        fv = (pe.Hv * dA - pe.shape.H * pe.dAv) / (dA * dA);
    }
}

// Solve [a b; b c] d = -g through the eigendecomposition, dropping modes
// below 1e-12 of the dominant eigenvalue.
void newton_step(double a, double b, double c, const double g[2], double d[2]) {
    const double half = 0.5 * (a + c);
    const double disc = std::hypot(0.5 * (a - c), b);
    const double l1 = half + disc, l2 = half - disc;
    const double cut = 1e-12 * std::max(std::abs(l1), std::abs(l2));
    d[0] = d[1] = 0.0;
    for (double lam : {l1, l2}) {
        if (std::abs(lam) <= cut || lam == 0.0) continue;
        double e0 = b, e1 = lam - a;
        if (std::hypot(e0, e1) < std::hypot(lam - c, b)) {
            e0 = lam - c;
            e1 = b;
        }
        const double nn = std::hypot(e0, e1);
        if (nn == 0.0) {
            // isotropic Hessian: step along -g/lam
            d[0] -= g[0] / lam;
            d[1] -= g[1] / lam;
            break;
        }
        e0 /= nn;
        e1 /= nn;
        const double proj = (e0 * g[0] + e1 * g[1]) / lam;
        d[0] -= proj * e0;
        d[1] -= proj * e1;
    }
}

} // namespace

bool set_tolerance(Tolerances& tol, const std::string& name, double value) {
    struct Entry {
        const char* name;
        double Tolerances::*field;
    };
    static const Entry table[] = {
        {"gb_defect", &Tolerances::gb_defect},
        {"p_min", &Tolerances::p_min},
        {"qres_max", &Tolerances::qres_max},
        {"deficit_sphere", &Tolerances::deficit_sphere},
        {"spread_const", &Tolerances::spread_const},
        {"psi_umbilic", &Tolerances::psi_umbilic},
        {"sign_margin", &Tolerances::sign_margin},
        {"critical_ineq", &Tolerances::critical_ineq},
        {"grad_tol", &Tolerances::grad_tol},
        {"grad_relaxed", &Tolerances::grad_relaxed},
        {"relation_sphere", &Tolerances::relation_sphere},
        {"relation_perturbed", &Tolerances::relation_perturbed},
        {"witness_tau", &Tolerances::witness_tau},
        {"tie_eps", &Tolerances::tie_eps},
    };
    for (const Entry& e : table)
        if (name == e.name) {
            tol.*(e.field) = value;
            return true;
        }
    return false;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

double umbilicity_deficit(const GridEval& ge) {
    double m = -std::numeric_limits<double>::infinity();
    for (const PointEval& pe : ge.nodes) m = std::max(m, deficit_of(pe));
    return m;
}

AuditReport p_nonnegativity_audit(const GridEval& ge, const Tolerances& tol,
                                  const std::string& surface_id) {
    AuditReport r = base_report("p_nonnegativity", ge, surface_id);
    std::vector<double> vals(ge.nodes.size());
    for (size_t k = 0; k < vals.size(); ++k) vals[k] = ge.nodes[k].curv.p;
    Extreme ex = scan_extreme("p", ge, vals, tol.tie_eps);
    r.verdict = ex.min >= -tol.p_min ? Verdict::consistent : Verdict::violated;
    r.extremes.push_back(ex);
    r.tolerances = {{"p_min", tol.p_min}};
    return r;
}

AuditReport q_residual_audit(const GridEval& ge, const Tolerances& tol,
                             const std::string& surface_id) {
    AuditReport r = base_report("q_residual", ge, surface_id);
    std::vector<double> vals(ge.nodes.size());
    for (size_t k = 0; k < vals.size(); ++k) vals[k] = ge.nodes[k].curv.qres;
    Extreme ex = scan_extreme("qres", ge, vals, tol.tie_eps);
    const double worst = std::max(std::abs(ex.min), std::abs(ex.max));
    r.verdict = worst <= tol.qres_max ? Verdict::consistent : Verdict::violated;
    r.extremes.push_back(ex);
    r.tolerances = {{"qres_max", tol.qres_max}, {"max_abs_qres", worst}};
    return r;
}

AuditReport umbilicity_audit(const GridEval& ge, const Tolerances& tol,
                             const std::string& surface_id) {
    AuditReport r = base_report("umbilicity_deficit", ge, surface_id);
    std::vector<double> vals(ge.nodes.size());
    for (size_t k = 0; k < vals.size(); ++k) vals[k] = deficit_of(ge.nodes[k]);
    r.extremes.push_back(scan_extreme("deficit", ge, vals, tol.tie_eps));
    r.verdict = Verdict::consistent;
    r.tolerances = {{"deficit_sphere", tol.deficit_sphere}};
    return r;
}

AuditReport constancy_audit(const GridEval& ge, ConstancyField field,
                            const Tolerances& tol,
                            const std::string& surface_id) {
    const char* tag = field == ConstancyField::K ? "K" : "KII";
    AuditReport r = base_report(std::string("constancy[") + tag + "]", ge,
                                surface_id);
    std::vector<double> vals(ge.nodes.size());
    for (size_t k = 0; k < vals.size(); ++k)
        vals[k] = field == ConstancyField::K ? ge.nodes[k].shape.K
                                             : ge.nodes[k].curv.kii;
    Extreme ex = scan_extreme(tag, ge, vals, tol.tie_eps);
    const double spread = (ex.max - ex.min) / std::max(1.0, std::abs(mean_of(vals)));
    const double deficit = umbilicity_deficit(ge);
    const bool constant = spread <= tol.spread_const;
    const bool spherical = deficit <= tol.deficit_sphere;
    r.verdict = constant == spherical ? Verdict::consistent : Verdict::violated;
    r.extremes.push_back(ex);
    r.tolerances = {{"spread_const", tol.spread_const},
                    {"deficit_sphere", tol.deficit_sphere},
                    {"spread", spread},
                    {"deficit", deficit}};
    return r;
}

AuditReport sign_change_audit(const GridEval& ge, const Tolerances& tol,
                              const std::string& surface_id) {
    require_positive_k(ge);
    AuditReport r = base_report("sign_change", ge, surface_id);
    std::vector<double> psi(ge.nodes.size()), cor3(ge.nodes.size());
    for (size_t k = 0; k < psi.size(); ++k) {
        const PointEval& pe = ge.nodes[k];
        psi[k] = pe.curv.psi;
        cor3[k] = pe.curv.kii - pe.shape.K / pe.shape.H;
    }
    Extreme expsi = scan_extreme("psi", ge, psi, tol.tie_eps);
    Extreme excor = scan_extreme("kii_minus_K_over_H", ge, cor3, tol.tie_eps);
    const double deficit = umbilicity_deficit(ge);
    double delta = 0.0, delta3 = 0.0;
    if (deficit <= tol.deficit_sphere) {
        r.verdict = max_abs(psi) <= tol.psi_umbilic ? Verdict::consistent
                                                    : Verdict::violated;
    } else {
        delta = tol.sign_margin * max_abs(psi);
        delta3 = tol.sign_margin * max_abs(cor3);
        const bool both_signs = expsi.min < -delta && expsi.max > delta;
        const bool cor_pos = excor.max > delta3;
        r.verdict = both_signs && cor_pos ? Verdict::consistent
                                          : Verdict::violated;
    }
    r.extremes.push_back(expsi);
    r.extremes.push_back(excor);
    r.tolerances = {{"psi_umbilic", tol.psi_umbilic},
                    {"sign_margin", tol.sign_margin},
                    {"deficit_sphere", tol.deficit_sphere},
                    {"deficit", deficit},
                    {"delta_psi", delta},
                    {"delta_cor", delta3}};
    return r;
}

RefinedPoint refine_critical(const RadialGraph& S, Field target, double u0,
                             double v0, double grad_tol) {
    // Hair inside the pole guard so clamped steps always stay evaluable.
    const double ulo = 1e-3 * (1.0 + 1e-6), uhi = kPi - ulo;
    double u = std::clamp(u0, ulo, uhi);
    double v = wrap_phi(v0);
    RefinedPoint rp;
    for (int iter = 0; iter < 60; ++iter) {
        const SurfaceJets sj = surface_jets(S, u, v);
        const Jet fj = field_jet(sj, target);
        const GradRecord gr = grad_from(sj, target);
        const double gn = std::sqrt(std::max(gr.norm2, 0.0));
        rp.u = u;
        rp.v = v;
        rp.grad_norm = gn;
        rp.value = fj.value();
        rp.boundary = u <= ulo || u >= uhi;
        if (gn <= grad_tol) {
            rp.converged = true;
            return rp;
        }
        const double g[2] = {fj.deriv(1, 0), fj.deriv(0, 1)};
        double d[2];
        newton_step(fj.deriv(2, 0), fj.deriv(1, 1), fj.deriv(0, 2), g, d);
        const double dn = std::hypot(d[0], d[1]);
        if (dn > 0.3) {
            d[0] *= 0.3 / dn;
            d[1] *= 0.3 / dn;
        }
        const double un = std::clamp(u + d[0], ulo, uhi);
        const double vn = wrap_phi(v + d[1]);
        const double moved = chart_distance(un, vn, u, v);
        u = un;
        v = vn;
        if (moved < 1e-13) break;  // clamped or singular step
    }
    // Stalled or out of iterations: relaxed acceptance for boundary and
    // shallow-basin cases.
    const SurfaceJets sj = surface_jets(S, u, v);
    const Jet fj = field_jet(sj, target);
    const GradRecord gr = grad_from(sj, target);
    rp.u = u;
    rp.v = v;
    rp.grad_norm = std::sqrt(std::max(gr.norm2, 0.0));
    rp.value = fj.value();
    rp.boundary = u <= ulo || u >= uhi;
    rp.converged = rp.grad_norm <= grad_tol;
    return rp;
}

AuditReport critical_point_audit(const RadialGraph& S, const GridEval& ge,
                                 Field target, const Tolerances& tol,
                                 const std::string& surface_id) {
    const char* tag = target == Field::H ? "H" : "HoverDetA";
    AuditReport r = base_report(std::string("critical_points[") + tag + "]",
                                ge, surface_id);
    const int nt = ge.grid.ntheta, np = ge.grid.nphi;
    const size_t n = ge.nodes.size();
    std::vector<double> tval(n), gnorm2(n);
    for (size_t k = 0; k < n; ++k) {
        const PointEval& pe = ge.nodes[k];
        double f, fu, fv;
        target_partials(pe, target, f, fu, fv);
        tval[k] = f;
        const double E = pe.forms.E, F = pe.forms.F, G = pe.forms.G;
        const double W = E * G - F * F;
        gnorm2[k] = (fu * (G * fu - F * fv) + fv * (-F * fu + E * fv)) / W;
    }
    const double scale = std::max(1.0, max_abs(tval));
    const double gtol = tol.grad_tol * scale;
    const double grelax = tol.grad_relaxed * scale;

    // Seeds: gradient-norm local minima over the 8-neighborhood (phi wraps).
    // Axisymmetric targets qualify whole rows, so when candidates overflow
    // the cap they are strided evenly instead of truncated, which would
    // starve every row after the first. The target's own grid extremes are
    // always seeded.
    std::vector<size_t> candidates;
    for (size_t k = 0; k < n; ++k) {
        const int i = static_cast<int>(k) / np, j = static_cast<int>(k) % np;
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di)
            for (int dj = -1; dj <= 1 && is_min; ++dj) {
                if (di == 0 && dj == 0) continue;
                const int ii = i + di;
                if (ii < 0 || ii >= nt) continue;
                const int jj = (j + dj + np) % np;
                if (gnorm2[static_cast<size_t>(ii) * np + jj] < gnorm2[k])
                    is_min = false;
            }
        if (is_min) candidates.push_back(k);
    }
    std::vector<size_t> seeds;
    const size_t cap = 40;
    if (candidates.size() <= cap) {
        seeds = candidates;
    } else {
        for (size_t k = 0; k < cap; ++k) {
            const size_t idx = candidates[k * candidates.size() / cap];
            if (seeds.empty() || seeds.back() != idx) seeds.push_back(idx);
        }
    }
    seeds.push_back(first_min_index(tval, tol.tie_eps));
    seeds.push_back(first_max_index(tval, tol.tie_eps));

    struct Crit {
        double u, v, gn, ineq;
        bool tight;
    };
    std::vector<Crit> accepted;
    auto try_accept = [&](double u, double v, double gn, bool tight) {
        for (const Crit& c : accepted)
            if (chart_distance(c.u, c.v, u, v) <= 1e-6) return;
        const PointEval pe = evaluate_point(S, u, v);
        const double ineq =
            pe.curv.kii - pe.shape.H * pe.shape.K / pe.shape.detA;
        accepted.push_back({u, v, gn, ineq, tight});
    };
    for (size_t k : seeds) {
        const PointEval& seed = ge.nodes[k];
        const RefinedPoint rp =
            refine_critical(S, target, seed.theta, seed.phi, gtol);
        if (rp.converged || rp.grad_norm <= grelax)
            try_accept(rp.u, rp.v, rp.grad_norm, rp.converged);
    }
    // Grid extremes of a compact surface are approximate critical points;
    // admit them under the relaxed gate even when Newton drifted elsewhere.
    for (size_t k :
         {first_min_index(tval, tol.tie_eps), first_max_index(tval, tol.tie_eps)}) {
        const double gn = std::sqrt(std::max(gnorm2[k], 0.0));
        if (gn <= grelax)
            try_accept(ge.nodes[k].theta, ge.nodes[k].phi, gn, false);
    }

    size_t tight_count = 0;
    double worst = std::numeric_limits<double>::infinity();
    Extreme ex;
    ex.name = "kii_minus_HK_over_detA_at_critical";
    if (!accepted.empty()) {
        size_t imn = 0, imx = 0;
        for (size_t k = 0; k < accepted.size(); ++k) {
            if (accepted[k].tight) ++tight_count;
            if (accepted[k].ineq < accepted[imn].ineq) imn = k;
            if (accepted[k].ineq > accepted[imx].ineq) imx = k;
        }
        worst = accepted[imn].ineq;
        ex.min = accepted[imn].ineq;
        ex.argmin_theta = accepted[imn].u;
        ex.argmin_phi = accepted[imn].v;
        ex.max = accepted[imx].ineq;
        ex.argmax_theta = accepted[imx].u;
        ex.argmax_phi = accepted[imx].v;
        r.extremes.push_back(ex);
        r.verdict = worst >= -tol.critical_ineq ? Verdict::consistent
                                                : Verdict::violated;
    } else {
        // No critical point found: reported, not fatal.
        r.verdict = Verdict::consistent;
        worst = 0.0;
    }
    r.tolerances = {{"critical_ineq", tol.critical_ineq},
                    {"grad_tol", tol.grad_tol},
                    {"grad_relaxed", tol.grad_relaxed},
                    {"accepted_points", static_cast<double>(accepted.size())},
                    {"newton_converged", static_cast<double>(tight_count)},
                    {"min_ineq", worst}};
    return r;
}

AuditReport extremum_coincidence_audit(const GridEval& ge, ExtremumPair pair,
                                       const Tolerances& tol,
                                       const std::string& surface_id) {
    require_positive_k(ge);
    const bool first = pair == ExtremumPair::minKII_maxK;
    AuditReport r = base_report(
        first ? "extremum_coincidence[minKII_maxK]"
              : "extremum_coincidence[minKIIoverK_maxHoverDetA]",
        ge, surface_id);
    std::vector<double> a(ge.nodes.size()), b(ge.nodes.size());
    for (size_t k = 0; k < a.size(); ++k) {
        const PointEval& pe = ge.nodes[k];
        if (first) {
            a[k] = pe.curv.kii;
            b[k] = pe.shape.K;
        } else {
            a[k] = pe.curv.kii / pe.shape.K;
            b[k] = pe.shape.H / pe.shape.detA;
        }
    }
    const char* aname = first ? "KII" : "KII_over_K";
    const char* bname = first ? "K" : "H_over_detA";
    Extreme exa = scan_extreme(aname, ge, a, tol.tie_eps);
    Extreme exb = scan_extreme(bname, ge, b, tol.tie_eps);
    const double d = chart_distance(exa.argmin_theta, exa.argmin_phi,
                                    exb.argmax_theta, exb.argmax_phi);
    const double spacing = grid_spacing(ge.grid);
    const double deficit = umbilicity_deficit(ge);
    if (d <= spacing)
        r.verdict = deficit <= tol.deficit_sphere ? Verdict::consistent
                                                  : Verdict::violated;
    else
        r.verdict = Verdict::not_applicable;
    r.extremes.push_back(exa);
    r.extremes.push_back(exb);
    r.tolerances = {{"deficit_sphere", tol.deficit_sphere},
                    {"distance", d},
                    {"spacing", spacing},
                    {"deficit", deficit}};
    return r;
}

RelationFit relation_fit(const GridEval& ge, RelationFamily family, double s,
                         double r) {
    RelationFit out;
    switch (family) {
        case RelationFamily::CK:
            out.admissible = true;
            break;
        case RelationFamily::CHsKr:
            out.admissible = s >= 0.0 && s <= 1.0 && r <= 1.0 && 2.0 * r + s <= 1.0;
            break;
        case RelationFamily::CHsK1rK:
            out.admissible = (r >= -1.0 && r <= -0.5) ||
                             (r + s >= -0.5 && r + s <= 0.0);
            break;
    }
    if (!out.admissible) return out;
    std::vector<double> res(ge.nodes.size());
    for (size_t k = 0; k < res.size(); ++k) {
        const PointEval& pe = ge.nodes[k];
        const double kii = pe.curv.kii, H = pe.shape.H, K = pe.shape.K;
        if (!(kii > 0.0) || !(K > 0.0) || !(H > 0.0))
            throw DomainError("nonpositive model factor at " +
                              node_label(pe.theta, pe.phi));
        switch (family) {
            case RelationFamily::CK:
                res[k] = std::log(kii) - std::log(K);
                break;
            case RelationFamily::CHsKr:
                res[k] = std::log(kii) - s * std::log(H) - r * std::log(K);
                break;
            case RelationFamily::CHsK1rK:
                res[k] = std::log(kii) - s * std::log(H) -
                         r * std::log(K + 1.0) - std::log(K);
                break;
        }
    }
    const auto [mn, mx] = std::minmax_element(res.begin(), res.end());
    out.spread = *mx - *mn;
    out.Cstar = std::exp(mean_of(res));
    return out;
}

AuditReport relation_lattice_audit(const GridEval& ge, const Tolerances& tol,
                                   const std::string& surface_id) {
    AuditReport r = base_report("relation_fit", ge, surface_id);
    struct Sample {
        RelationFamily family;
        double s, r;
    };
    std::vector<Sample> lattice;
    lattice.push_back({RelationFamily::CK, 0.0, 1.0});
    for (int i = 0; i < 5; ++i) {
        const double s = i / 4.0;
        const double rmax = (1.0 - s) / 2.0;
        for (int j = 0; j < 5; ++j)
            lattice.push_back({RelationFamily::CHsKr, s,
                               -1.0 + j * (rmax + 1.0) / 4.0});
    }
    for (int i = 0; i < 5; ++i) {
        const double s = i / 4.0;
        for (int j = 0; j < 5; ++j)
            lattice.push_back({RelationFamily::CHsK1rK, s, -1.0 + j * 0.5 / 4.0});
    }
    for (int i = 0; i < 5; ++i) {
        const double s = i / 4.0;
        for (int j = 0; j < 5; ++j) {
            const double t = -0.5 + j * 0.5 / 4.0;
            lattice.push_back({RelationFamily::CHsK1rK, s, t - s});
        }
    }

    const double deficit = umbilicity_deficit(ge);
    const bool spherical = deficit <= tol.deficit_sphere;
    double min_spread = std::numeric_limits<double>::infinity();
    double max_spread = 0.0;
    bool ok = true;
    // The worst sample drives the extremes: largest spread on spheres,
    // smallest off spheres, whichever sits closest to the verdict edge.
    size_t pick = 0;
    double pick_spread =
        spherical ? -1.0 : std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < lattice.size(); ++k) {
        const RelationFit fit =
            relation_fit(ge, lattice[k].family, lattice[k].s, lattice[k].r);
        if (!fit.admissible) continue;
        min_spread = std::min(min_spread, fit.spread);
        max_spread = std::max(max_spread, fit.spread);
        if (spherical ? fit.spread > tol.relation_sphere
                      : fit.spread <= tol.relation_perturbed)
            ok = false;
        if (spherical ? fit.spread > pick_spread : fit.spread < pick_spread) {
            pick_spread = fit.spread;
            pick = k;
        }
    }
    const Sample& w = lattice[pick];
    std::vector<double> res(ge.nodes.size());
    for (size_t k = 0; k < res.size(); ++k) {
        const PointEval& pe = ge.nodes[k];
        const double kii = pe.curv.kii, H = pe.shape.H, K = pe.shape.K;
        switch (w.family) {
            case RelationFamily::CK:
                res[k] = std::log(kii) - std::log(K);
                break;
            case RelationFamily::CHsKr:
                res[k] = std::log(kii) - w.s * std::log(H) - w.r * std::log(K);
                break;
            case RelationFamily::CHsK1rK:
                res[k] = std::log(kii) - w.s * std::log(H) -
                         w.r * std::log(K + 1.0) - std::log(K);
                break;
        }
    }
    r.extremes.push_back(scan_extreme("log_residual", ge, res, tol.tie_eps));
    r.verdict = ok ? Verdict::consistent : Verdict::violated;
    r.tolerances = {{"relation_sphere", tol.relation_sphere},
                    {"relation_perturbed", tol.relation_perturbed},
                    {"deficit_sphere", tol.deficit_sphere},
                    {"deficit", deficit},
                    {"min_spread", min_spread},
                    {"max_spread", max_spread},
                    {"worst_family", static_cast<double>(w.family)},
                    {"worst_s", w.s},
                    {"worst_r", w.r}};
    return r;
}

AuditReport comonotone_pair_audit(const GridEval& ge, ComonotonePair pair,
                                  const Tolerances& tol,
                                  const std::string& surface_id) {
    require_positive_k(ge);
    const bool first = pair == ComonotonePair::K_KII;
    AuditReport r = base_report(first ? "comonotone[K_KII]"
                                      : "comonotone[HoverDetA_KIIoverK]",
                                ge, surface_id);
    const char* uname = first ? "K" : "H_over_detA";
    const char* vname = first ? "KII" : "KII_over_K";
    const size_t n = ge.nodes.size();
    std::vector<double> u(n), v(n);
    for (size_t k = 0; k < n; ++k) {
        const PointEval& pe = ge.nodes[k];
        if (first) {
            u[k] = pe.shape.K;
            v[k] = pe.curv.kii;
        } else {
            u[k] = pe.shape.H / pe.shape.detA;
            v[k] = pe.curv.kii / pe.shape.K;
        }
    }
    Extreme exu = scan_extreme(uname, ge, u, tol.tie_eps);
    Extreme exv = scan_extreme(vname, ge, v, tol.tie_eps);
    const double su = max_abs(u), sv = max_abs(v);
    const double degen_u = 1e-10 * std::max(1.0, su);
    const double degen_v = 1e-10 * std::max(1.0, sv);
    if (exu.max - exu.min <= degen_u && exv.max - exv.min <= degen_v) {
        r.verdict = Verdict::not_applicable;
        r.extremes.push_back(exu);
        r.extremes.push_back(exv);
        r.tolerances = {{"witness_tau", tol.witness_tau},
                        {"degenerate_eps", 1e-10}};
        return r;
    }
    const double tau_u = tol.witness_tau * su;
    const double tau_v = tol.witness_tau * sv;

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (u[x] != u[y]) return u[x] < u[y];
        return x < y;
    });
    size_t lag = 0;
    bool have_min = false;
    double min_v = 0.0;
    size_t min_idx = 0;
    size_t wit_p = 0, wit_q = 0;
    bool found = false;
    for (size_t pi = 0; pi < n && !found; ++pi) {
        const size_t p = order[pi];
        while (lag < n && u[order[lag]] < u[p] - tau_u) {
            const size_t q = order[lag];
            if (!have_min || v[q] < min_v) {
                have_min = true;
                min_v = v[q];
                min_idx = q;
            }
            ++lag;
        }
        if (have_min && v[p] > min_v + tau_v) {
            wit_p = p;
            wit_q = min_idx;
            found = true;
        }
    }
    if (found) {
        r.verdict = Verdict::consistent;
        Extreme wu;
        wu.name = uname;
        wu.min = u[wit_q];
        wu.argmin_theta = ge.nodes[wit_q].theta;
        wu.argmin_phi = ge.nodes[wit_q].phi;
        wu.max = u[wit_p];
        wu.argmax_theta = ge.nodes[wit_p].theta;
        wu.argmax_phi = ge.nodes[wit_p].phi;
        Extreme wv = wu;
        wv.name = vname;
        wv.min = v[wit_q];
        wv.max = v[wit_p];
        r.extremes.push_back(wu);
        r.extremes.push_back(wv);
    } else {
        r.verdict = Verdict::violated;
        r.extremes.push_back(exu);
        r.extremes.push_back(exv);
    }
    r.tolerances = {{"witness_tau", tol.witness_tau},
                    {"tau_u", tau_u},
                    {"tau_v", tau_v}};
    return r;
}

bool SuiteReport::all_ok() const {
    if (gb_verdict == Verdict::violated) return false;
    for (const AuditReport& a : audits)
        if (a.verdict == Verdict::violated) return false;
    return true;
}

SuiteReport run_audit_suite(const RadialGraph& S, const SphereGrid& grid,
                            const Tolerances& tol, const MutationFlags& mut,
                            const std::string& surface_id) {
    SuiteReport sr;
    sr.surface = surface_id;
    sr.grid = {grid.ntheta, grid.nphi};
    const GridEval ge = evaluate_grid(S, grid, mut);
    sr.gb = gauss_bonnet_report(S, grid);
    sr.gb_verdict = std::max(sr.gb.defect1, sr.gb.defect2) <= tol.gb_defect
                        ? Verdict::consistent
                        : Verdict::violated;
    sr.audits.push_back(p_nonnegativity_audit(ge, tol, surface_id));
    sr.audits.push_back(q_residual_audit(ge, tol, surface_id));
    sr.audits.push_back(umbilicity_audit(ge, tol, surface_id));
    sr.audits.push_back(constancy_audit(ge, ConstancyField::K, tol, surface_id));
    sr.audits.push_back(constancy_audit(ge, ConstancyField::KII, tol, surface_id));
    sr.audits.push_back(sign_change_audit(ge, tol, surface_id));
    sr.audits.push_back(critical_point_audit(S, ge, Field::H, tol, surface_id));
    sr.audits.push_back(
        critical_point_audit(S, ge, Field::HoverDetA, tol, surface_id));
    sr.audits.push_back(extremum_coincidence_audit(
        ge, ExtremumPair::minKII_maxK, tol, surface_id));
    sr.audits.push_back(extremum_coincidence_audit(
        ge, ExtremumPair::minKIIoverK_maxHoverDetA, tol, surface_id));
    sr.audits.push_back(relation_lattice_audit(ge, tol, surface_id));
    sr.audits.push_back(
        comonotone_pair_audit(ge, ComonotonePair::K_KII, tol, surface_id));
    sr.audits.push_back(comonotone_pair_audit(
        ge, ComonotonePair::HoverDetA_KIIoverK, tol, surface_id));
    return sr;
}

} // namespace hcurv
