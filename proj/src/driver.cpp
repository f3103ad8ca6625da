#include "hcurv/driver.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "hcurv/curvature.hpp"
#include "hcurv/quadrature.hpp"

namespace hcurv {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string surface_id(double r0, const std::vector<Term>& terms) {
    if (terms.empty()) return "sphere(r=" + format_double(r0) + ")";
    std::string id = "graph(r0=" + format_double(r0);
    for (const Term& t : terms) {
        id += "; " + std::to_string(t.l) + "," + std::to_string(t.m) + "," +
              format_double(t.amp);
    }
    id += ")";
    return id;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        if (std::fflush(stdout) != 0) throw Error("cannot write to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("cannot write output file: " + path);
}

const json& spec_field(const json& obj, const char* key, const char* where) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw SpecError(std::string("missing ") + where + " field \"" + key +
                        "\"");
    return *it;
}

ojson extreme_json(const Extreme& ex) {
    ojson j;
    j["name"] = ex.name;
    j["min"] = ex.min;
    j["argmin"] = {ex.argmin_theta, ex.argmin_phi};
    j["max"] = ex.max;
    j["argmax"] = {ex.argmax_theta, ex.argmax_phi};
    return j;
}

ojson audit_json(const AuditReport& a) {
    ojson j;
    j["audit"] = a.audit;
    j["surface"] = a.surface;
    j["verdict"] = to_string(a.verdict);
    j["extremes"] = ojson::array();
    for (const Extreme& ex : a.extremes) j["extremes"].push_back(extreme_json(ex));
    j["tolerances"] = ojson::object();
    for (const auto& [name, value] : a.tolerances) j["tolerances"][name] = value;
    j["grid"] = {a.grid[0], a.grid[1]};
    return j;
}

ojson suite_json(const SuiteReport& sr) {
    ojson j;
    j["surface"] = sr.surface;
    j["grid"] = {sr.grid[0], sr.grid[1]};
    ojson gb;
    gb["intK_dOmega"] = sr.gb.intK_dOmega;
    gb["intKII_dOmegaII"] = sr.gb.intKII_dOmegaII;
    gb["defect1"] = sr.gb.defect1;
    gb["defect2"] = sr.gb.defect2;
    gb["verdict"] = to_string(sr.gb_verdict);
    j["gauss_bonnet"] = gb;
    j["audits"] = ojson::array();
    for (const AuditReport& a : sr.audits) j["audits"].push_back(audit_json(a));
    return j;
}

void append_csv_row(std::string& out, const PointEval& q) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,"
                  "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n",
                  q.theta, q.phi, q.forms.E, q.forms.F, q.forms.G, q.forms.e,
                  q.forms.f, q.forms.g, q.shape.H, q.shape.K, q.shape.detA,
                  q.shape.kappa1, q.shape.kappa2, q.curv.kii, q.curv.p,
                  q.curv.psi, q.curv.qres);
    out += buf;
}

ojson gallery_spec(double r0, const std::vector<Term>& terms) {
    ojson j;
    j["model"] = "radial_graph";
    j["r0"] = r0;
    j["terms"] = ojson::array();
    for (const Term& t : terms) {
        ojson tj;
        tj["l"] = t.l;
        tj["m"] = t.m;
        tj["amp"] = t.amp;
        j["terms"].push_back(tj);
    }
    return j;
}

} // namespace

LoadedSurface load_surface_spec(const std::string& path,
                                bool require_positive_k) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open surface spec: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw SpecError("surface spec is not valid JSON: " +
                        std::string(e.what()));
    }
    if (!j.is_object()) throw SpecError("surface spec root must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "model" && key != "r0" && key != "terms")
            throw SpecError("unknown spec field \"" + key + "\"");
    }
    const json& model = spec_field(j, "model", "spec");
    if (!model.is_string() || model.get<std::string>() != "radial_graph")
        throw SpecError("spec field \"model\" must be \"radial_graph\"");
    const json& r0j = spec_field(j, "r0", "spec");
    if (!r0j.is_number()) throw SpecError("spec field \"r0\" must be a number");
    const json& termsj = spec_field(j, "terms", "spec");
    if (!termsj.is_array())
        throw SpecError("spec field \"terms\" must be an array");

    std::vector<Term> terms;
    terms.reserve(termsj.size());
    for (const json& t : termsj) {
        if (!t.is_object()) throw SpecError("each term must be an object");
        for (const auto& [key, value] : t.items()) {
            (void)value;
            if (key != "l" && key != "m" && key != "amp")
                throw SpecError("unknown term field \"" + key + "\"");
        }
        const json& lj = spec_field(t, "l", "term");
        const json& mj = spec_field(t, "m", "term");
        const json& aj = spec_field(t, "amp", "term");
        if (!lj.is_number_integer())
            throw SpecError("term field \"l\" must be an integer");
        if (!mj.is_number_integer())
            throw SpecError("term field \"m\" must be an integer");
        if (!aj.is_number())
            throw SpecError("term field \"amp\" must be a number");
        const int l = lj.get<int>();
        const int m = mj.get<int>();
        if (l < 0 || l > 4 || m < -l || m > l)
            throw SpecError("term (l=" + std::to_string(l) +
                            ", m=" + std::to_string(m) +
                            ") out of range: need 0 <= l <= 4 and |m| <= l");
        terms.push_back({l, m, aj.get<double>()});
    }

    const double r0 = r0j.get<double>();
    RadialGraph S = make_radial_graph(r0, terms, require_positive_k);
    return {std::move(S), surface_id(r0, terms)};
}

Tolerances tolerances_from(const std::vector<std::string>& overrides) {
    Tolerances tol;
    for (const std::string& raw : overrides) {
        const auto eq = raw.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SpecError("tolerance override must be NAME=VALUE, got \"" +
                            raw + "\"");
        const std::string name = raw.substr(0, eq);
        const std::string text = raw.substr(eq + 1);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0')
            throw SpecError("tolerance value for \"" + name +
                            "\" is not a number: \"" + text + "\"");
        if (!set_tolerance(tol, name, value))
            throw SpecError("unknown tolerance name \"" + name + "\"");
    }
    return tol;
}

int cmd_eval(const RunConfig& cfg) {
    tolerances_from(cfg.tol_overrides);  // validate even though eval has no knobs
    const LoadedSurface ls = load_surface_spec(cfg.surface_path, false);
    const SphereGrid grid = sphere_grid(cfg.ntheta, cfg.nphi);
    const GridEval ge = evaluate_grid(ls.surface, grid);

    std::string out;
    out.reserve(ge.nodes.size() * 420 + 128);
    out += "theta,phi,E,F,G,e,f,g,H,K,detA,kappa1,kappa2,KII,P,psi,qres\n";
    for (const PointEval& q : ge.nodes) append_csv_row(out, q);
    write_output(cfg.output_path, out);
    return 0;
}

int cmd_audit(const RunConfig& cfg) {
    const Tolerances tol = tolerances_from(cfg.tol_overrides);
    const LoadedSurface ls = load_surface_spec(cfg.surface_path, true);
    const SphereGrid grid = sphere_grid(cfg.ntheta, cfg.nphi);
    const SuiteReport sr = run_audit_suite(ls.surface, grid, tol, {}, ls.id);
    write_output(cfg.output_path, suite_json(sr).dump(2) + "\n");
    return sr.all_ok() ? 0 : 1;
}

int cmd_gallery(const std::string& output_path) {
    struct Entry {
        double r0;
        std::vector<Term> terms;
    };
    const Entry entries[] = {
        {0.5, {}},
        {1.0, {}},
        {2.0, {}},
        {1.0, {{2, 0, 0.05}}},
        {1.0, {{3, 1, 0.03}}},
        {1.0, {{4, 2, 0.02}}},
    };
    ojson out = ojson::array();
    for (const Entry& ge : entries) {
        make_radial_graph(ge.r0, ge.terms, true);  // revalidate before printing
        out.push_back(gallery_spec(ge.r0, ge.terms));
    }
    write_output(output_path, out.dump(2) + "\n");
    return 0;
}

int cmd_fit(const RunConfig& cfg, const std::string& family, double s,
            double r) {
    RelationFamily fam;
    if (family == "ck") {
        fam = RelationFamily::CK;
    } else if (family == "hskr") {
        fam = RelationFamily::CHsKr;
    } else if (family == "hsk1rk") {
        fam = RelationFamily::CHsK1rK;
    } else {
        throw SpecError("unknown relation family \"" + family +
                        "\": expected ck, hskr, or hsk1rk");
    }
    tolerances_from(cfg.tol_overrides);
    const LoadedSurface ls = load_surface_spec(cfg.surface_path, true);
    const SphereGrid grid = sphere_grid(cfg.ntheta, cfg.nphi);
    const GridEval ge = evaluate_grid(ls.surface, grid);
    const RelationFit fit = relation_fit(ge, fam, s, r);

    ojson j;
    j["surface"] = ls.id;
    j["grid"] = {cfg.ntheta, cfg.nphi};
    j["family"] = family;
    j["s"] = s;
    j["r"] = r;
    j["admissible"] = fit.admissible;
    if (fit.admissible) {
        j["Cstar"] = fit.Cstar;
        j["spread"] = fit.spread;
    } else {
        j["Cstar"] = nullptr;
        j["spread"] = nullptr;
    }
    write_output(cfg.output_path, j.dump(2) + "\n");
    return 0;
}

namespace {

int report(int code, const char* type, const std::exception& e) {
    std::cerr << "error: " << type << ": " << e.what() << "\n";
    return code;
}

} // namespace

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const SpecError& e) {
        return report(2, "SpecError", e);
    } catch (const NotPositiveRadius& e) {
        return report(2, "NotPositiveRadius", e);
    } catch (const SecondFormNotDefinite& e) {
        return report(2, "SecondFormNotDefinite", e);
    } catch (const NegativeCurvature& e) {
        return report(2, "NegativeCurvature", e);
    } catch (const GridTooCoarse& e) {
        return report(2, "GridTooCoarse", e);
    } catch (const PoleProximity& e) {
        return report(3, "PoleProximity", e);
    } catch (const DegenerateFrame& e) {
        return report(3, "DegenerateFrame", e);
    } catch (const DegenerateMetric& e) {
        return report(3, "DegenerateMetric", e);
    } catch (const DomainError& e) {
        return report(3, "DomainError", e);
    } catch (const Error& e) {
        return report(3, "Error", e);
    } catch (const std::exception& e) {
        return report(3, "unexpected", e);
    }
}

} // namespace hcurv
