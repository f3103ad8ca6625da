#pragma once

#include <array>

#include "hcurv/errors.hpp"

namespace hcurv {

/// Truncated bivariate Taylor expansion of a scalar at a chart point,
/// total order 4. coeff(i,j) stores the Taylor coefficient, i.e. the
/// mixed partial d_u^i d_v^j divided by i!j!.
///
/// Storage is graded: degree 0, then degree 1, ... with i descending
/// within a degree. `ord` is the highest total degree whose coefficients
/// are trustworthy; arithmetic lowers it where an operation loses an
/// order (derivative extraction) and propagates the minimum otherwise.
class Jet {
public:
    static constexpr int kLen = 15;
    static constexpr int kOrder = 4;

    Jet() = default;

    static Jet constant(double value);
    /// Coordinate jets at (u0, v0): value slot plus a unit first-order slot.
    static Jet var_u(double u0);
    static Jet var_v(double v0);

    double value() const { return c_[0]; }
    /// Raw mixed partial d_u^i d_v^j (coefficient times i!j!).
    double deriv(int i, int j) const;
    double coeff(int i, int j) const { return c_[pos(i, j)]; }
    int order() const { return ord_; }

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(Jet a, double s);
    friend Jet operator+(double s, Jet a) { return a + s; }
    friend Jet operator-(Jet a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s);
    friend Jet operator*(double s, Jet a) { return a * s; }
    friend Jet operator/(Jet a, double s);

    /// Coefficient-shift derivative jets; result order drops by one.
    friend Jet d_u(const Jet& a);
    friend Jet d_v(const Jet& a);

    friend Jet jsqrt(const Jet& a);
    friend Jet jexp(const Jet& a);
    friend Jet jlog(const Jet& a);
    friend Jet jsin(const Jet& a);
    friend Jet jcos(const Jet& a);
    friend Jet jsinh(const Jet& a);
    friend Jet jcosh(const Jet& a);
    friend Jet jpow(const Jet& a, double p);

    static int pos(int i, int j);

private:
    std::array<double, kLen> c_{};
    int ord_ = kOrder;

    /// f(a0 + h) = sum_k derivs[k]/k! h^k, h nilpotent of degree 5.
    static Jet compose(const Jet& a, const std::array<double, 5>& derivs);
};

} // namespace hcurv
