// Acceptance gate: checks the ten shipping criteria end to end and prints
// one [PASS]/[FAIL] line each. Exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hcurv/audits.hpp"
#include "hcurv/curvature.hpp"
#include "hcurv/quadrature.hpp"
#include "hcurv/surface.hpp"

using namespace hcurv;

namespace {

int g_failures = 0;

void line(int n, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n,
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Entry {
    std::string id;
    bool is_sphere;
    RadialGraph S;
};

std::vector<Entry> gallery() {
    std::vector<Entry> out;
    out.push_back({"sphere(r=0.5)", true, geodesic_sphere(0.5)});
    out.push_back({"sphere(r=1)", true, geodesic_sphere(1.0)});
    out.push_back({"sphere(r=2)", true, geodesic_sphere(2.0)});
    out.push_back({"graph(2,0,0.05)", false,
                   make_radial_graph(1.0, {{2, 0, 0.05}})});
    out.push_back({"graph(3,1,0.03)", false,
                   make_radial_graph(1.0, {{3, 1, 0.03}})});
    out.push_back({"graph(4,2,0.02)", false,
                   make_radial_graph(1.0, {{4, 2, 0.02}})});
    return out;
}

double diag(const AuditReport& r, const std::string& name) {
    for (const auto& [k, v] : r.tolerances)
        if (k == name) return v;
    return std::nan("");
}

} // namespace

int main() {
    const SphereGrid grid64 = sphere_grid(64, 128);
    const SphereGrid grid32 = sphere_grid(32, 64);

    // ---- 1: geodesic-sphere closed forms at every node, < 2 s each ----
    {
        bool ok = true;
        double worst = 0.0, slowest = 0.0;
        for (const double r : {0.5, 1.0, 2.0}) {
            const double t0 = now_s();
            const RadialGraph S = geodesic_sphere(r);
            const GridEval ge = evaluate_grid(S, grid64);
            const double coth = std::cosh(r) / std::sinh(r);
            const double k = 1.0 / (std::sinh(r) * std::sinh(r));
            const double kii = 1.0 / (std::sinh(r) * std::cosh(r));
            double err = 0.0;
            for (const PointEval& q : ge.nodes) {
                err = std::max(err, std::abs(q.shape.H - coth));
                err = std::max(err, std::abs(q.shape.detA - coth * coth));
                err = std::max(err, std::abs(q.shape.K - k));
                err = std::max(err, std::abs(q.curv.kii - kii));
            }
            const double dt = now_s() - t0;
            worst = std::max(worst, err);
            slowest = std::max(slowest, dt);
            ok = ok && err <= 1e-9 && dt < 2.0;
        }
        line(1, ok, "sphere closed forms, max err " + fmt(worst) +
                        ", slowest surface " + fmt(slowest) + " s");
    }

    std::vector<Entry> gal = gallery();
    std::vector<GridEval> evals;
    for (const Entry& g : gal) evals.push_back(evaluate_grid(g.S, grid64));

    // ---- 2: detA == K_Brioschi(I) + 1 on every node ----
    {
        double worst = 0.0;
        for (const Entry& g : gal) {
            for (size_t i = 0; i < grid64.theta.size(); ++i)
                for (size_t j = 0; j < grid64.phi.size(); ++j) {
                    const SurfaceJets sj =
                        surface_jets(g.S, grid64.theta[i], grid64.phi[j]);
                    const ShapeRecord sr = shape_from(sj);
                    const double kb = brioschi_k(sj.E, sj.F, sj.G);
                    worst = std::max(worst, std::abs(sr.detA - (kb + 1.0)));
                }
        }
        line(2, worst <= 1e-7,
             "contracted Gauss gap, max " + fmt(worst) + " (<= 1e-7)");
    }

    // ---- 3: identity residual small everywhere; RHS sign flip detected ----
    {
        double worst = 0.0;
        for (const GridEval& ge : evals)
            for (const PointEval& q : ge.nodes)
                worst = std::max(worst, std::abs(q.curv.qres));

        MutationFlags flip;
        flip.flip_q_rhs = true;
        const RadialGraph probe = make_radial_graph(1.0, {{3, 1, 0.2}});
        const GridEval mut = evaluate_grid(probe, grid64, flip);
        double detect = 0.0;
        for (const PointEval& q : mut.nodes)
            detect = std::max(detect, std::abs(q.curv.qres));

        line(3, worst <= 1e-7 && detect > 1e-3,
             "identity residual max " + fmt(worst) +
                 " (<= 1e-7); flipped-sign residual " + fmt(detect) +
                 " (> 1e-3)");
    }

    // ---- 4: closed-form remainder is nonnegative ----
    {
        double worst = 0.0;
        for (const GridEval& ge : evals)
            for (const PointEval& q : ge.nodes)
                worst = std::min(worst, q.curv.p);
        line(4, worst >= -1e-8, "min remainder " + fmt(worst) + " (>= -1e-8)");
    }

    // ---- 5: Gauss-Bonnet in both metrics, defect floor on refinement ----
    {
        bool ok = true;
        double worst64 = 0.0;
        for (const Entry& g : gal) {
            const GaussBonnetReport c = gauss_bonnet_report(g.S, grid32);
            const GaussBonnetReport f = gauss_bonnet_report(g.S, grid64);
            const std::pair<double, double> defects[2] = {
                {c.defect1, f.defect1}, {c.defect2, f.defect2}};
            for (const auto& [d32, d64] : defects) {
                const double a32 = std::abs(d32), a64 = std::abs(d64);
                worst64 = std::max(worst64, a64);
                // Spectral convergence saturates at roundoff well before
                // these grids; below 1e-10 the ratio test is meaningless.
                ok = ok && a64 <= 1e-6 && a64 <= std::max(a32 / 100.0, 1e-10);
            }
        }
        line(5, ok, "both totals within " + fmt(worst64) +
                        " of 4pi; refinement at the roundoff floor");
    }

    // ---- 6: dichotomy field: flat on spheres, straddles zero otherwise ----
    {
        bool ok = true;
        for (size_t k = 0; k < gal.size(); ++k) {
            double lo = 0.0, hi = 0.0, amax = 0.0;
            for (const PointEval& q : evals[k].nodes) {
                lo = std::min(lo, q.curv.psi);
                hi = std::max(hi, q.curv.psi);
                amax = std::max(amax, std::abs(q.curv.psi));
            }
            if (gal[k].is_sphere)
                ok = ok && amax <= 1e-9;
            else
                ok = ok && lo < -1e-10 * amax && hi > 1e-10 * amax;
        }
        line(6, ok, "psi flat on spheres, sign-changing on perturbed surfaces");
    }

    // ---- 7: inequality at located critical points of H and H/detA ----
    {
        bool ok = true;
        double worst = 0.0;
        const Tolerances tol;
        for (size_t k = 0; k < gal.size(); ++k) {
            for (const Field f : {Field::H, Field::HoverDetA}) {
                const AuditReport r =
                    critical_point_audit(gal[k].S, evals[k], f, tol, gal[k].id);
                const double mi = diag(r, "min_ineq");
                const double np = diag(r, "accepted_points");
                worst = std::min(worst, mi);
                ok = ok && r.verdict == Verdict::consistent && np >= 1.0 &&
                     mi >= -1e-8;
            }
        }
        line(7, ok, "min of K_II - HK/detA over critical points " + fmt(worst) +
                        " (>= -1e-8)");
    }

    // ---- 8: relation spreads: tight on spheres, fat on perturbations ----
    {
        bool ok = true;
        double sphere_worst = 0.0, perturbed_best = 1e300;
        const Tolerances tol;
        for (size_t k = 0; k < gal.size(); ++k) {
            const AuditReport r = relation_lattice_audit(evals[k], tol, gal[k].id);
            ok = ok && r.verdict == Verdict::consistent;
            if (gal[k].is_sphere) {
                sphere_worst = std::max(sphere_worst, diag(r, "max_spread"));
                ok = ok && diag(r, "max_spread") <= 1e-10;
            } else {
                perturbed_best = std::min(perturbed_best, diag(r, "min_spread"));
                ok = ok && diag(r, "min_spread") > 1e-6;
            }
        }
        line(8, ok, "sphere spread <= " + fmt(sphere_worst) +
                        ", perturbed spread >= " + fmt(perturbed_best));
    }

    // ---- 9: strict comonotonicity witness on every perturbed surface ----
    {
        bool ok = true;
        const Tolerances tol;
        for (size_t k = 0; k < gal.size(); ++k) {
            if (gal[k].is_sphere) continue;
            for (const ComonotonePair pair :
                 {ComonotonePair::K_KII, ComonotonePair::HoverDetA_KIIoverK}) {
                const AuditReport r =
                    comonotone_pair_audit(evals[k], pair, tol, gal[k].id);
                ok = ok && r.verdict == Verdict::consistent;
            }
        }
        line(9, ok, "witness pairs found for both scatter pairs");
    }

    // ---- 10: byte-determinism of the CLI audit across runs and threads ----
    {
        const double t0 = now_s();
        const char* specs[6] = {
            R"({"model":"radial_graph","r0":0.5,"terms":[]})",
            R"({"model":"radial_graph","r0":1.0,"terms":[]})",
            R"({"model":"radial_graph","r0":2.0,"terms":[]})",
            R"({"model":"radial_graph","r0":1.0,"terms":[{"l":2,"m":0,"amp":0.05}]})",
            R"({"model":"radial_graph","r0":1.0,"terms":[{"l":3,"m":1,"amp":0.03}]})",
            R"({"model":"radial_graph","r0":1.0,"terms":[{"l":4,"m":2,"amp":0.02}]})",
        };
        bool ok = true;
        auto slurp = [](const std::string& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        for (int k = 0; k < 6 && ok; ++k) {
            const std::string spec = "/tmp/hcurv_acc_spec.json";
            {
                std::ofstream out(spec, std::ios::binary);
                out << specs[k];
            }
            const std::string base = std::string(HCURV_CLI_PATH) +
                                     " audit --surface " + spec + " --out ";
            const std::string runs[3] = {
                "HCURV_THREADS=2 " + base + "/tmp/hcurv_acc_a.json",
                "HCURV_THREADS=2 " + base + "/tmp/hcurv_acc_b.json",
                "HCURV_THREADS=1 " + base + "/tmp/hcurv_acc_c.json",
            };
            for (const std::string& cmd : runs) {
                const int raw = std::system(cmd.c_str());
                ok = ok && WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
            }
            const std::string a = slurp("/tmp/hcurv_acc_a.json");
            ok = ok && !a.empty() && a == slurp("/tmp/hcurv_acc_b.json") &&
                 a == slurp("/tmp/hcurv_acc_c.json");
        }
        const double dt = now_s() - t0;
        ok = ok && dt < 60.0;
        line(10, ok, "gallery audit byte-identical across runs and threads, " +
                         fmt(dt) + " s (< 60 s)");
    }

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
