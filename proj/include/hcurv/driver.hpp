#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hcurv/audits.hpp"
#include "hcurv/errors.hpp"
#include "hcurv/surface.hpp"

namespace hcurv {

/// Rejected surface spec or run configuration; maps to exit code 2.
struct SpecError : Error { using Error::Error; };

struct RunConfig {
    std::string surface_path;
    int ntheta = 64;
    int nphi = 128;
    std::vector<std::string> tol_overrides;  // raw NAME=VALUE strings
    std::string output_path;  // empty writes to stdout
};

struct LoadedSurface {
    RadialGraph surface;
    std::string id;
};

/// Shortest round-trip decimal form, '.' separator, locale-free.
std::string format_double(double x);

/// Parses and validates a surface spec file against the exact schema
/// {"model":"radial_graph","r0":<real>,"terms":[{"l","m","amp"}...]}.
/// Unknown fields, wrong types, and out-of-range (l,m) are SpecError.
LoadedSurface load_surface_spec(const std::string& path,
                                bool require_positive_k);

/// Applies NAME=VALUE overrides; unknown names and malformed values are
/// SpecError.
Tolerances tolerances_from(const std::vector<std::string>& overrides);

/// Full per-node dump as CSV, theta-major, 17 significant digits.
int cmd_eval(const RunConfig& cfg);

/// The whole audit battery as one JSON document; exit 0 iff nothing is
/// violated, 1 otherwise.
int cmd_audit(const RunConfig& cfg);

/// Built-in surface specs, ready to feed back through --surface.
int cmd_gallery(const std::string& output_path);

/// One relation fit: family in {ck, hskr, hsk1rk} with exponents (s, r).
int cmd_fit(const RunConfig& cfg, const std::string& family, double s,
            double r);

/// Runs the body under the exit-code contract: 2 for rejected input,
/// 3 for evaluation and I/O failures, pass-through otherwise. Messages go
/// to stderr as "error: <Type>: <detail>".
int run_guarded(const std::function<int()>& body);

} // namespace hcurv
