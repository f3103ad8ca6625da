#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hcurv/quadrature.hpp"

namespace hcurv {

/// Audit thresholds. Every field can be overridden by name through
/// set_tolerance; the defaults are the contract values.
struct Tolerances {
    double gb_defect = 1e-6;         // Gauss-Bonnet relative defect bound
    double p_min = 1e-8;             // lower bound slack for the P sweep
    double qres_max = 1e-7;          // formula-(Q) residual bound
    double deficit_sphere = 1e-8;    // umbilicity deficit gate: sphere vs not
    double spread_const = 1e-8;      // constancy spread gate
    double psi_umbilic = 1e-9;       // max |psi| allowed on umbilic surfaces
    double sign_margin = 1e-10;      // sign-change margin factor (times scale)
    double critical_ineq = 1e-8;     // slack for kii - HK/detA at critical pts
    double grad_tol = 1e-10;         // Newton convergence factor (times scale)
    double grad_relaxed = 1e-6;      // relaxed acceptance factor (times scale)
    double relation_sphere = 1e-9;   // relation spread bound on spheres
    double relation_perturbed = 1e-6; // relation spread floor off spheres
    double witness_tau = 1e-9;       // co-monotone witness margin (times scale)
    double tie_eps = 1e-12;          // argmin/argmax first-tie window factor
};

/// Sets the named field; returns false for an unknown name.
bool set_tolerance(Tolerances& tol, const std::string& name, double value);

enum class Verdict { consistent, violated, not_applicable };

const char* to_string(Verdict v);

/// One audited scalar field: extreme values with the grid nodes (or refined
/// points) attaining them. Ties resolve to the first node in theta-major
/// order within a tie_eps window.
struct Extreme {
    std::string name;
    double min = 0.0, argmin_theta = 0.0, argmin_phi = 0.0;
    double max = 0.0, argmax_theta = 0.0, argmax_phi = 0.0;
};

struct AuditReport {
    std::string audit;
    std::string surface;
    Verdict verdict = Verdict::consistent;
    std::vector<Extreme> extremes;
    // Thresholds used plus computed diagnostics, in emission order.
    std::vector<std::pair<std::string, double>> tolerances;
    std::array<int, 2> grid = {0, 0};
};

/// max over nodes of (H^2 - detA)/detA; zero exactly on extrinsic spheres.
double umbilicity_deficit(const GridEval& ge);

/// P >= -p_min at every node, else violated.
AuditReport p_nonnegativity_audit(const GridEval& ge, const Tolerances& tol,
                                  const std::string& surface_id);

/// |qres| <= qres_max at every node, else violated.
AuditReport q_residual_audit(const GridEval& ge, const Tolerances& tol,
                             const std::string& surface_id);

/// Reports the deficit field; informational, never violated.
AuditReport umbilicity_audit(const GridEval& ge, const Tolerances& tol,
                             const std::string& surface_id);

enum class ConstancyField { K, KII };

/// Relative spread of the field vs the umbilicity deficit: constancy and
/// sphericity must co-occur, in both directions.
AuditReport constancy_audit(const GridEval& ge, ConstancyField field,
                            const Tolerances& tol,
                            const std::string& surface_id);

/// psi = KII - K/sqrt(detA) must vanish on umbilic surfaces and attain both
/// signs otherwise; also reports the KII - K/H field, whose max must be
/// positive off spheres.
AuditReport sign_change_audit(const GridEval& ge, const Tolerances& tol,
                              const std::string& surface_id);

/// One Newton refinement toward a critical point of the target field,
/// starting inside the chart. Boundary means the pole guard clamped a step.
struct RefinedPoint {
    double u = 0.0, v = 0.0;
    double grad_norm = 0.0;  // I-norm of the gradient at (u,v)
    double value = 0.0;      // target value at (u,v)
    bool converged = false;  // grad_norm <= grad_tol
    bool boundary = false;
};

/// grad_tol is absolute here; callers scale it by the field magnitude.
RefinedPoint refine_critical(const RadialGraph& S, Field target, double u0,
                             double v0, double grad_tol = 1e-10);

/// Multi-start Newton on the chart gradient of H or H/detA; at every
/// accepted critical point checks KII - H K/detA >= -critical_ineq.
AuditReport critical_point_audit(const RadialGraph& S, const GridEval& ge,
                                 Field target, const Tolerances& tol,
                                 const std::string& surface_id);

enum class ExtremumPair { minKII_maxK, minKIIoverK_maxHoverDetA };

/// If the minimizer of the first field and the maximizer of the second land
/// within one grid spacing, the surface must be umbilic.
AuditReport extremum_coincidence_audit(const GridEval& ge, ExtremumPair pair,
                                       const Tolerances& tol,
                                       const std::string& surface_id);

enum class RelationFamily { CK, CHsKr, CHsK1rK };

struct RelationFit {
    double Cstar = 0.0;
    double spread = 0.0;
    bool admissible = false;
};

/// Fits log C* = mean of [log KII - log(model)]; spread = max - min of the
/// same residual field. Out-of-box exponents return admissible = false.
RelationFit relation_fit(const GridEval& ge, RelationFamily family, double s,
                         double r);

/// relation_fit swept over the default 5x5 exponent lattices of the three
/// families; spheres must fit everywhere, non-spheres nowhere.
AuditReport relation_lattice_audit(const GridEval& ge, const Tolerances& tol,
                                   const std::string& surface_id);

enum class ComonotonePair { K_KII, HoverDetA_KIIoverK };

/// Searches the node scatter for a witness pair on which the two fields move
/// strictly in opposite directions, certifying that no increasing function
/// links one to the other.
AuditReport comonotone_pair_audit(const GridEval& ge, ComonotonePair pair,
                                  const Tolerances& tol,
                                  const std::string& surface_id);

struct SuiteReport {
    std::string surface;
    std::array<int, 2> grid = {0, 0};
    GaussBonnetReport gb;
    Verdict gb_verdict = Verdict::consistent;
    std::vector<AuditReport> audits;

    bool all_ok() const;
};

/// The full battery in a fixed order; one grid evaluation pass shared by all
/// node-sweep audits.
SuiteReport run_audit_suite(const RadialGraph& S, const SphereGrid& grid,
                            const Tolerances& tol = {},
                            const MutationFlags& mut = {},
                            const std::string& surface_id = "");

} // namespace hcurv
