#include <string>

#include <CLI11.hpp>

#include "hcurv/driver.hpp"

namespace {

void add_common_options(CLI::App* cmd, hcurv::RunConfig& cfg) {
    cmd->add_option("--surface", cfg.surface_path, "Surface spec JSON file")
        ->required();
    cmd->add_option("--ntheta", cfg.ntheta,
                    "Gauss-Legendre node count in theta (default 64)");
    cmd->add_option("--nphi", cfg.nphi,
                    "Uniform node count in phi (default 128)");
    cmd->add_option("--out", cfg.output_path, "Output path (default stdout)");
    cmd->add_option("--tol", cfg.tol_overrides,
                    "Tolerance override NAME=VALUE (repeatable)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Curvature toolkit for radial graphs over the sphere in "
        "hyperbolic 3-space: fundamental forms, mean and extrinsic "
        "curvature, the second-form curvature K_II, and the audit battery "
        "for the sphere-rigidity criteria."};
    app.require_subcommand(1);

    hcurv::RunConfig cfg;
    std::string family;
    double s = 0.0;
    double r = 0.0;
    std::string gallery_out;

    CLI::App* eval = app.add_subcommand(
        "eval", "Per-node forms and curvature dump as CSV");
    add_common_options(eval, cfg);

    CLI::App* audit = app.add_subcommand(
        "audit", "Run the full audit battery, report as JSON");
    add_common_options(audit, cfg);

    CLI::App* gallery = app.add_subcommand(
        "gallery", "Print the built-in surface specs as JSON");
    gallery->add_option("--out", gallery_out, "Output path (default stdout)");

    CLI::App* fit = app.add_subcommand(
        "fit", "Fit one curvature relation family at exponents (s, r)");
    add_common_options(fit, cfg);
    fit->add_option("--family", family, "Relation family: ck, hskr, hsk1rk")
        ->required();
    fit->add_option("--s", s, "Exponent s (default 0)");
    fit->add_option("--r", r, "Exponent r (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    return hcurv::run_guarded([&]() -> int {
        if (eval->parsed()) return hcurv::cmd_eval(cfg);
        if (audit->parsed()) return hcurv::cmd_audit(cfg);
        if (gallery->parsed()) return hcurv::cmd_gallery(gallery_out);
        return hcurv::cmd_fit(cfg, family, s, r);
    });
}
