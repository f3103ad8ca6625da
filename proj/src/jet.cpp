#include "hcurv/jet.hpp"

#include <cmath>

namespace hcurv {

namespace {

struct Slot {
    int i, j;
};

// Graded order, i descending within each total degree.
constexpr std::array<Slot, Jet::kLen> kIdx = {{
    {0, 0},
    {1, 0}, {0, 1},
    {2, 0}, {1, 1}, {0, 2},
    {3, 0}, {2, 1}, {1, 2}, {0, 3},
    {4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4},
}};

constexpr std::array<std::array<int, 5>, 5> makePosTable() {
    std::array<std::array<int, 5>, 5> t{};
    for (auto& row : t)
        for (auto& v : row) v = -1;
    for (int k = 0; k < Jet::kLen; ++k) t[kIdx[k].i][kIdx[k].j] = k;
    return t;
}

constexpr auto kPos = makePosTable();

constexpr double kFact[5] = {1.0, 1.0, 2.0, 6.0, 24.0};

} // namespace

int Jet::pos(int i, int j) { return kPos[i][j]; }

Jet Jet::constant(double value) {
    Jet r;
    r.c_[0] = value;
    return r;
}

Jet Jet::var_u(double u0) {
    Jet r;
    r.c_[0] = u0;
    r.c_[pos(1, 0)] = 1.0;
    return r;
}

Jet Jet::var_v(double v0) {
    Jet r;
    r.c_[0] = v0;
    r.c_[pos(0, 1)] = 1.0;
    return r;
}

double Jet::deriv(int i, int j) const {
    return c_[pos(i, j)] * kFact[i] * kFact[j];
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    for (int k = 0; k < kLen; ++k) c_[k] += o.c_[k];
    ord_ = std::min(ord_, o.ord_);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int k = 0; k < kLen; ++k) c_[k] -= o.c_[k];
    ord_ = std::min(ord_, o.ord_);
    return *this;
}

Jet operator+(Jet a, double s) {
    a.c_[0] += s;
    return a;
}

Jet operator*(Jet a, double s) {
    for (auto& v : a.c_) v *= s;
    return a;
}

Jet operator/(Jet a, double s) {
    if (s == 0.0) throw DomainError("jet division by zero scalar");
    for (auto& v : a.c_) v /= s;
    return a;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.ord_ = std::min(a.ord_, b.ord_);
    for (int ka = 0; ka < Jet::kLen; ++ka) {
        const double av = a.c_[ka];
        if (av == 0.0) continue;
        const int ia = kIdx[ka].i, ja = kIdx[ka].j;
        const int da = ia + ja;
        for (int kb = 0; kb < Jet::kLen; ++kb) {
            const int ib = kIdx[kb].i, jb = kIdx[kb].j;
            if (da + ib + jb > Jet::kOrder) continue;
            r.c_[kPos[ia + ib][ja + jb]] += av * b.c_[kb];
        }
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    const double b0 = b.c_[0];
    if (b0 == 0.0 || !std::isfinite(b0))
        throw DomainError("jet division by zero value slot");
    Jet r;
    r.ord_ = std::min(a.ord_, b.ord_);
    r.c_[0] = a.c_[0] / b0;
    for (int kt = 1; kt < Jet::kLen; ++kt) {
        const int it = kIdx[kt].i, jt = kIdx[kt].j;
        double acc = a.c_[kt];
        // subtract sum of b[k,l] * r[it-k, jt-l] over nonzero (k,l) <= (it,jt)
        for (int k = 0; k <= it; ++k) {
            for (int l = 0; l <= jt; ++l) {
                if (k == 0 && l == 0) continue;
                acc -= b.c_[kPos[k][l]] * r.c_[kPos[it - k][jt - l]];
            }
        }
        r.c_[kt] = acc / b0;
    }
    return r;
}

Jet d_u(const Jet& a) {
    Jet r;
    r.ord_ = a.ord_ - 1;
    for (int k = 0; k < Jet::kLen; ++k) {
        const int i = kIdx[k].i, j = kIdx[k].j;
        if (i + 1 + j <= Jet::kOrder)
            r.c_[k] = (i + 1) * a.c_[kPos[i + 1][j]];
    }
    return r;
}

Jet d_v(const Jet& a) {
    Jet r;
    r.ord_ = a.ord_ - 1;
    for (int k = 0; k < Jet::kLen; ++k) {
        const int i = kIdx[k].i, j = kIdx[k].j;
        if (i + j + 1 <= Jet::kOrder)
            r.c_[k] = (j + 1) * a.c_[kPos[i][j + 1]];
    }
    return r;
}

Jet jsqrt(const Jet& a) {
    const double a0 = a.c_[0];
    if (!(a0 > 0.0)) throw DomainError("jet sqrt of nonpositive value slot");
    Jet r;
    r.ord_ = a.ord_;
    const double r0 = std::sqrt(a0);
    r.c_[0] = r0;
    for (int kt = 1; kt < Jet::kLen; ++kt) {
        const int it = kIdx[kt].i, jt = kIdx[kt].j;
        double acc = a.c_[kt];
        // subtract cross terms r[k,l]*r[it-k,jt-l], excluding the two r[kt]*r0 ends
        for (int k = 0; k <= it; ++k) {
            for (int l = 0; l <= jt; ++l) {
                if ((k == 0 && l == 0) || (k == it && l == jt)) continue;
                acc -= r.c_[kPos[k][l]] * r.c_[kPos[it - k][jt - l]];
            }
        }
        r.c_[kt] = acc / (2.0 * r0);
    }
    return r;
}

Jet Jet::compose(const Jet& a, const std::array<double, 5>& derivs) {
    Jet h = a;
    h.c_[0] = 0.0;
    Jet r = Jet::constant(derivs[4] / kFact[4]);
    r.ord_ = a.ord_;
    for (int k = 3; k >= 0; --k)
        r = r * h + derivs[k] / kFact[k];
    r.ord_ = a.ord_;
    return r;
}

Jet jexp(const Jet& a) {
    const double e = std::exp(a.c_[0]);
    return Jet::compose(a, {e, e, e, e, e});
}

Jet jlog(const Jet& a) {
    const double x = a.c_[0];
    if (!(x > 0.0)) throw DomainError("jet log of nonpositive value slot");
    const double i1 = 1.0 / x, i2 = i1 * i1;
    return Jet::compose(a, {std::log(x), i1, -i2, 2.0 * i2 * i1, -6.0 * i2 * i2});
}

Jet jsin(const Jet& a) {
    const double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
    return Jet::compose(a, {s, c, -s, -c, s});
}

Jet jcos(const Jet& a) {
    const double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
    return Jet::compose(a, {c, -s, -c, s, c});
}

Jet jsinh(const Jet& a) {
    const double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]);
    return Jet::compose(a, {s, c, s, c, s});
}

Jet jcosh(const Jet& a) {
    const double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]);
    return Jet::compose(a, {c, s, c, s, c});
}

Jet jpow(const Jet& a, double p) {
    const double x = a.c_[0];
    if (!(x > 0.0)) throw DomainError("jet pow of nonpositive value slot");
    std::array<double, 5> d;
    double coef = 1.0;
    for (int k = 0; k <= 4; ++k) {
        d[k] = coef * std::pow(x, p - k);
        coef *= (p - k);
    }
    return Jet::compose(a, d);
}

} // namespace hcurv
