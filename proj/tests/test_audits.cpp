#include <cmath>
#include <string>

#include <doctest.h>

#include "hcurv/audits.hpp"
#include "hcurv/surface.hpp"

using namespace hcurv;

namespace {

double diag(const AuditReport& r, const std::string& name) {
    for (const auto& [k, v] : r.tolerances)
        if (k == name) return v;
    FAIL("missing diagnostic ", name);
    return 0.0;
}

} // namespace

TEST_CASE("tolerance names are a closed set") {
    Tolerances tol;
    for (const char* name :
         {"gb_defect", "p_min", "qres_max", "deficit_sphere", "spread_const",
          "psi_umbilic", "sign_margin", "critical_ineq", "grad_tol",
          "grad_relaxed", "relation_sphere", "relation_perturbed",
          "witness_tau", "tie_eps"}) {
        CHECK(set_tolerance(tol, name, 0.5));
    }
    CHECK(tol.qres_max == 0.5);
    CHECK_FALSE(set_tolerance(tol, "qresmax", 1.0));
    CHECK_FALSE(set_tolerance(tol, "", 1.0));
}

TEST_CASE("suite is green on a sphere and a perturbed sphere") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;

    const SuiteReport sph =
        run_audit_suite(geodesic_sphere(1.0), grid, tol, {}, "sphere(r=1)");
    CHECK(sph.all_ok());
    CHECK(sph.gb_verdict == Verdict::consistent);
    REQUIRE(sph.audits.size() == 13);

    const char* order[] = {"p_nonnegativity",
                           "q_residual",
                           "umbilicity_deficit",
                           "constancy[K]",
                           "constancy[KII]",
                           "sign_change",
                           "critical_points[H]",
                           "critical_points[HoverDetA]",
                           "extremum_coincidence[minKII_maxK]",
                           "extremum_coincidence[minKIIoverK_maxHoverDetA]",
                           "relation_fit",
                           "comonotone[K_KII]",
                           "comonotone[HoverDetA_KIIoverK]"};
    for (size_t i = 0; i < sph.audits.size(); ++i)
        CHECK(sph.audits[i].audit == order[i]);

    const RadialGraph P = make_radial_graph(1.0, {{3, 1, 0.03}});
    const SuiteReport per = run_audit_suite(P, grid, tol, {}, "perturbed");
    CHECK(per.all_ok());
    for (const AuditReport& a : per.audits) {
        CHECK(a.surface == "perturbed");
        CHECK(a.grid[0] == 32);
        CHECK(a.grid[1] == 64);
    }
}

TEST_CASE("constant fields report the first node under the tie rule") {
    const SphereGrid grid = sphere_grid(32, 64);
    const GridEval ge = evaluate_grid(geodesic_sphere(1.0), grid);
    const Tolerances tol;
    const AuditReport r = constancy_audit(ge, ConstancyField::K, tol, "s");
    CHECK(r.verdict == Verdict::consistent);
    REQUIRE(r.extremes.size() == 1);
    // All nodes tie; the scan must settle on the very first one.
    CHECK(r.extremes[0].argmin_theta == grid.theta[0]);
    CHECK(r.extremes[0].argmin_phi == grid.phi[0]);
    CHECK(r.extremes[0].argmax_theta == grid.theta[0]);
    CHECK(r.extremes[0].argmax_phi == grid.phi[0]);
}

TEST_CASE("umbilicity deficit separates spheres from graphs") {
    const SphereGrid grid = sphere_grid(32, 64);
    const GridEval sph = evaluate_grid(geodesic_sphere(2.0), grid);
    CHECK(umbilicity_deficit(sph) < 1e-12);

    const RadialGraph P = make_radial_graph(1.0, {{2, 0, 0.05}});
    const GridEval per = evaluate_grid(P, grid);
    CHECK(umbilicity_deficit(per) > 1e-5);

    const Tolerances tol;
    CHECK(umbilicity_audit(sph, tol, "s").verdict == Verdict::consistent);
    CHECK(umbilicity_audit(per, tol, "p").verdict == Verdict::consistent);
}

TEST_CASE("dichotomy field straddles zero off the sphere") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;
    const RadialGraph P = make_radial_graph(1.0, {{3, 1, 0.03}});
    const GridEval ge = evaluate_grid(P, grid);
    const AuditReport r = sign_change_audit(ge, tol, "p");
    CHECK(r.verdict == Verdict::consistent);
    REQUIRE(r.extremes.size() == 2);
    CHECK(r.extremes[0].min < 0.0);
    CHECK(r.extremes[0].max > 0.0);
}

TEST_CASE("mutated identity is flagged by the residual audit") {
    const SphereGrid grid = sphere_grid(64, 128);
    const Tolerances tol;

    const RadialGraph G = make_radial_graph(1.0, {{4, 2, 0.02}});
    MutationFlags flip_rhs;
    flip_rhs.flip_q_rhs = true;
    const GridEval mut = evaluate_grid(G, grid, flip_rhs);
    const AuditReport r = q_residual_audit(mut, tol, "mutated");
    CHECK(r.verdict == Verdict::violated);

    const GridEval clean = evaluate_grid(G, grid);
    CHECK(q_residual_audit(clean, tol, "clean").verdict == Verdict::consistent);

    // The second mutation mis-signs the paired gradient term on the left.
    const RadialGraph B = make_radial_graph(1.0, {{2, 0, 0.3}});
    MutationFlags flip_grad;
    flip_grad.flip_q_gradterm = true;
    const SphereGrid coarse = sphere_grid(32, 64);
    const GridEval mg = evaluate_grid(B, coarse, flip_grad);
    const AuditReport rg = q_residual_audit(mg, tol, "mutated-grad");
    CHECK(rg.verdict == Verdict::violated);
    REQUIRE(rg.extremes.size() == 1);
    CHECK(std::max(std::abs(rg.extremes[0].min), std::abs(rg.extremes[0].max)) >
          1e-3);
}

TEST_CASE("critical point finder handles constant and generic targets") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;

    // Constant H: every point is critical, inequality is an identity.
    const GridEval sph = evaluate_grid(geodesic_sphere(1.0), grid);
    const AuditReport rs = critical_point_audit(geodesic_sphere(1.0), sph,
                                                Field::H, tol, "s");
    CHECK(rs.verdict == Verdict::consistent);
    CHECK(diag(rs, "accepted_points") >= 1.0);
    CHECK(diag(rs, "min_ineq") >= -1e-8);

    const RadialGraph P = make_radial_graph(1.0, {{2, 0, 0.05}});
    const GridEval per = evaluate_grid(P, grid);
    for (const Field f : {Field::H, Field::HoverDetA}) {
        const AuditReport r = critical_point_audit(P, per, f, tol, "p");
        CHECK(r.verdict == Verdict::consistent);
        CHECK(diag(r, "accepted_points") >= 2.0);
        CHECK(diag(r, "min_ineq") >= -1e-8);
    }
}

TEST_CASE("newton refinement drives the gradient to zero") {
    const RadialGraph P = make_radial_graph(1.0, {{2, 0, 0.05}});
    // Axisymmetric surface: H depends on theta only; refine from a rough seed.
    const RefinedPoint rp = refine_critical(P, Field::H, 1.3, 0.8);
    CHECK(rp.converged);
    CHECK(rp.grad_norm < 1e-10);
    CHECK(rp.u > 1e-3);
    CHECK(rp.u < 3.141);
}

TEST_CASE("inequality chain at the curvature maximum") {
    const SphereGrid grid = sphere_grid(48, 96);
    const RadialGraph surfaces[] = {
        geodesic_sphere(0.5),
        geodesic_sphere(1.0),
        geodesic_sphere(2.0),
        make_radial_graph(1.0, {{2, 0, 0.05}}),
        make_radial_graph(1.0, {{3, 1, 0.03}}),
        make_radial_graph(1.0, {{4, 2, 0.02}}),
    };
    for (const RadialGraph& S : surfaces) {
        const GridEval ge = evaluate_grid(S, grid);
        // Grid argmax of K, then polish: the chain is a statement about the
        // true maximum, and the grid node can sit a cell away from it.
        size_t best = 0;
        for (size_t k = 1; k < ge.nodes.size(); ++k)
            if (ge.nodes[k].shape.K > ge.nodes[best].shape.K) best = k;
        const RefinedPoint rp = refine_critical(
            S, Field::K, ge.nodes[best].theta, ge.nodes[best].phi);
        const PointEval q = evaluate_point(S, rp.u, rp.v);
        const double K = q.shape.K;
        const double step1 =
            q.shape.H / std::sqrt(q.shape.detA) * K / std::sqrt(K + 1.0);
        CHECK(q.curv.kii >= step1 - 1e-9);
        CHECK(step1 >= K / std::sqrt(K + 1.0) - 1e-9);
    }
}

TEST_CASE("extremum coincidence separates spheres from graphs") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;
    const GridEval sph = evaluate_grid(geodesic_sphere(1.0), grid);
    const AuditReport rs =
        extremum_coincidence_audit(sph, ExtremumPair::minKII_maxK, tol, "s");
    CHECK(rs.verdict != Verdict::violated);

    const RadialGraph P = make_radial_graph(1.0, {{3, 1, 0.03}});
    const GridEval per = evaluate_grid(P, grid);
    const AuditReport rp =
        extremum_coincidence_audit(per, ExtremumPair::minKII_maxK, tol, "p");
    CHECK(rp.verdict == Verdict::not_applicable);
}

TEST_CASE("relation fit locks the sphere constant and rejects bad exponents") {
    const SphereGrid grid = sphere_grid(16, 32);
    const GridEval sph = evaluate_grid(geodesic_sphere(1.0), grid);

    const RelationFit ck = relation_fit(sph, RelationFamily::CK, 0.0, 0.0);
    CHECK(ck.admissible);
    CHECK(ck.Cstar == doctest::Approx(std::tanh(1.0)).epsilon(1e-10));
    CHECK(ck.spread < 1e-10);

    const RelationFit inbox =
        relation_fit(sph, RelationFamily::CHsKr, 0.5, 0.25);
    CHECK(inbox.admissible);
    CHECK(inbox.spread < 1e-10);

    CHECK_FALSE(relation_fit(sph, RelationFamily::CHsKr, 0.5, 2.0).admissible);
    CHECK_FALSE(relation_fit(sph, RelationFamily::CHsKr, -0.1, 0.0).admissible);
    CHECK_FALSE(
        relation_fit(sph, RelationFamily::CHsK1rK, 0.5, 0.4).admissible);
}

TEST_CASE("relation lattice spreads separate spheres from graphs") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;

    const GridEval sph = evaluate_grid(geodesic_sphere(2.0), grid);
    const AuditReport rs = relation_lattice_audit(sph, tol, "s");
    CHECK(rs.verdict == Verdict::consistent);
    CHECK(diag(rs, "max_spread") <= 1e-10);

    const RadialGraph P = make_radial_graph(1.0, {{2, 0, 0.05}});
    const GridEval per = evaluate_grid(P, grid);
    const AuditReport rp = relation_lattice_audit(per, tol, "p");
    CHECK(rp.verdict == Verdict::consistent);
    CHECK(diag(rp, "min_spread") > 1e-6);
}

TEST_CASE("comonotone witness exists off the sphere and not on it") {
    const SphereGrid grid = sphere_grid(32, 64);
    const Tolerances tol;

    const GridEval sph = evaluate_grid(geodesic_sphere(1.0), grid);
    CHECK(comonotone_pair_audit(sph, ComonotonePair::K_KII, tol, "s").verdict ==
          Verdict::not_applicable);

    const RadialGraph P = make_radial_graph(1.0, {{3, 1, 0.03}});
    const GridEval per = evaluate_grid(P, grid);
    for (const ComonotonePair pair :
         {ComonotonePair::K_KII, ComonotonePair::HoverDetA_KIIoverK}) {
        const AuditReport r = comonotone_pair_audit(per, pair, tol, "p");
        CHECK(r.verdict == Verdict::consistent);
        REQUIRE(r.extremes.size() == 2);
    }
}
