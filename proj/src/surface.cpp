#include "hcurv/surface.hpp"

#include <cmath>
#include <cstdio>

#include "hcurv/harmonics.hpp"
#include "hcurv/quadrature.hpp"

namespace hcurv {

namespace {

Jet rhoJet(const RadialGraph& S, const Jet& u, const Jet& v) {
    Jet x = jcos(u), s = jsin(u);
    Jet rho = Jet::constant(S.r0());
    for (const auto& t : S.terms())
        rho += real_sph_harm(t.l, t.m, x, s, v) * t.amp;
    return rho;
}

std::string nodeLabel(double u, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(theta=%.6f, phi=%.6f)", u, v);
    return buf;
}

struct RawJets {
    std::array<Jet, 4> X, Xu, Xv, N;
    Jet rho, E, F, G, e, f, g, W;
};

// Everything up to the second form, with the normal NOT yet sign-fixed.
RawJets rawJets(const RadialGraph& S, double u, double v) {
    if (std::min(u, M_PI - u) < 1e-3)
        throw PoleProximity("chart point too close to a pole " + nodeLabel(u, v));
    try {
        const Jet ju = Jet::var_u(u), jv = Jet::var_v(v);
        RawJets r;
        r.rho = rhoJet(S, ju, jv);
        const Jet st = jsin(ju), ct = jcos(ju);
        const Jet sp = jsin(jv), cp = jcos(jv);
        const Jet sh = jsinh(r.rho), ch = jcosh(r.rho);
        r.X = {ch, sh * st * cp, sh * st * sp, sh * ct};
        for (int k = 0; k < 4; ++k) {
            r.Xu[k] = d_u(r.X[k]);
            r.Xv[k] = d_v(r.X[k]);
        }
        r.E = mdot4(r.Xu, r.Xu);
        r.F = mdot4(r.Xu, r.Xv);
        r.G = mdot4(r.Xv, r.Xv);
        r.W = r.E * r.G - r.F * r.F;
        const Four<Jet> cr = cross4(r.X, r.Xu, r.Xv);
        const Jet nn = mdot4(cr, cr);
        if (!(nn.value() > 0.0))
            throw DegenerateFrame("immersion not regular at " + nodeLabel(u, v));
        const Jet nrm = jsqrt(nn);
        for (int k = 0; k < 4; ++k) r.N[k] = cr[k] / nrm;
        std::array<Jet, 4> Xuu, Xuv, Xvv;
        for (int k = 0; k < 4; ++k) {
            Xuu[k] = d_u(r.Xu[k]);
            Xuv[k] = d_v(r.Xu[k]);
            Xvv[k] = d_v(r.Xv[k]);
        }
        r.e = mdot4(r.N, Xuu);
        r.f = mdot4(r.N, Xuv);
        r.g = mdot4(r.N, Xvv);
        return r;
    } catch (DomainError& err) {
        throw DomainError(std::string(err.what()) + " at " + nodeLabel(u, v));
    }
}

void applySign(RawJets& r, double sign) {
    if (sign == 1.0) return;
    for (int k = 0; k < 4; ++k) r.N[k] = -r.N[k];
    r.e = -r.e;
    r.f = -r.f;
    r.g = -r.g;
}

} // namespace

RadialGraph make_radial_graph(double r0, std::vector<Term> terms,
                              bool require_positive_k) {
    if (!(r0 > 0.0)) throw NotPositiveRadius("base radius r0 must be positive");
    for (const auto& t : terms) {
        if (t.l < 0 || t.l > 4 || std::abs(t.m) > t.l)
            throw DomainError("harmonic term requires 0 <= l <= 4 and |m| <= l");
    }
    RadialGraph S(r0, std::move(terms));

    const SphereGrid grid = sphere_grid(32, 64);
    bool signSet = false;
    for (int i = 0; i < grid.ntheta; ++i) {
        for (int j = 0; j < grid.nphi; ++j) {
            const double u = grid.theta[i], v = grid.phi[j];
            RawJets r = rawJets(S, u, v);
            if (!signSet) {
                if (r.e.value() == 0.0)
                    throw SecondFormNotDefinite(
                        "second form vanishes at " + nodeLabel(u, v));
                S.sign_ = (r.e.value() > 0.0) ? 1.0 : -1.0;
                signSet = true;
            }
            applySign(r, S.sign_);
            const double ev = r.e.value(), fv = r.f.value(), gv = r.g.value();
            if (!(ev > 0.0) || !(ev * gv - fv * fv > 0.0))
                throw SecondFormNotDefinite(
                    "second form not positive-definite at " + nodeLabel(u, v));
            if (!(r.rho.value() > 0.0))
                throw NotPositiveRadius("radius not positive at " + nodeLabel(u, v));
            if (require_positive_k) {
                const double K = (ev * gv - fv * fv) / r.W.value() - 1.0;
                if (!(K > 0.0))
                    throw NegativeCurvature(
                        "Gaussian curvature not positive at " + nodeLabel(u, v));
            }
        }
    }
    return S;
}

RadialGraph geodesic_sphere(double r) {
    return make_radial_graph(r, {});
}

std::array<Jet, 4> immersion_jet(const RadialGraph& S, double u, double v) {
    return rawJets(S, u, v).X;
}

SurfaceJets surface_jets(const RadialGraph& S, double u, double v) {
    RawJets r = rawJets(S, u, v);
    applySign(r, S.normal_sign());
    SurfaceJets sj;
    sj.X = r.X;
    sj.Xu = r.Xu;
    sj.Xv = r.Xv;
    sj.N = r.N;
    sj.rho = r.rho;
    sj.E = r.E;
    sj.F = r.F;
    sj.G = r.G;
    sj.e = r.e;
    sj.f = r.f;
    sj.g = r.g;
    sj.W = r.W;
    sj.detA = (sj.e * sj.g - sj.f * sj.f) / sj.W;
    sj.H = (sj.G * sj.e - sj.F * sj.f * 2.0 + sj.E * sj.g) / (sj.W * 2.0);
    sj.K = sj.detA - 1.0;
    return sj;
}

PointFrame frame_at(const RadialGraph& S, double u, double v) {
    const SurfaceJets sj = surface_jets(S, u, v);
    auto val = [](const std::array<Jet, 4>& a) {
        return AmbientVector{a[0].value(), a[1].value(), a[2].value(), a[3].value()};
    };
    return {val(sj.X), val(sj.Xu), val(sj.Xv), val(sj.N)};
}

FormsRecord forms_at(const RadialGraph& S, double u, double v) {
    const SurfaceJets sj = surface_jets(S, u, v);
    return {sj.E.value(), sj.F.value(), sj.G.value(),
            sj.e.value(), sj.f.value(), sj.g.value()};
}

ShapeRecord shape_from(const SurfaceJets& sj) {
    const double E = sj.E.value(), F = sj.F.value(), G = sj.G.value();
    const double e = sj.e.value(), f = sj.f.value(), g = sj.g.value();
    const double W = sj.W.value();
    ShapeRecord r;
    r.a11 = (G * e - F * f) / W;
    r.a12 = (G * f - F * g) / W;
    r.a21 = (E * f - F * e) / W;
    r.a22 = (E * g - F * f) / W;
    r.H = sj.H.value();
    r.detA = sj.detA.value();
    r.K = sj.K.value();
    const double disc = std::max(r.H * r.H - r.detA, 0.0);
    r.kappa1 = r.H + std::sqrt(disc);
    r.kappa2 = r.H - std::sqrt(disc);
    return r;
}

ShapeRecord shape_at(const RadialGraph& S, double u, double v) {
    return shape_from(surface_jets(S, u, v));
}

Jet field_jet(const SurfaceJets& sj, Field field) {
    switch (field) {
        case Field::H: return sj.H;
        case Field::K: return sj.K;
        case Field::DetA: return sj.detA;
        case Field::HoverDetA: return sj.H / sj.detA;
        case Field::H2overDetA: return sj.H * sj.H / sj.detA;
    }
    throw DomainError("unknown field");
}

GradRecord grad_from(const SurfaceJets& sj, Field field) {
    const Jet fj = field_jet(sj, field);
    GradRecord r;
    r.fu = fj.deriv(1, 0);
    r.fv = fj.deriv(0, 1);
    const double E = sj.E.value(), F = sj.F.value(), G = sj.G.value();
    const double W = sj.W.value();
    r.grad1 = (G * r.fu - F * r.fv) / W;
    r.grad2 = (-F * r.fu + E * r.fv) / W;
    r.norm2 = r.fu * r.grad1 + r.fv * r.grad2;
    return r;
}

GradRecord grad_at(const RadialGraph& S, Field field, double u, double v) {
    return grad_from(surface_jets(S, u, v), field);
}

} // namespace hcurv
