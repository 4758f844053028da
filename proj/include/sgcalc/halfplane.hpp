#ifndef SGCALC_HALFPLANE_HPP
#define SGCALC_HALFPLANE_HPP

#include <functional>
#include <string>
#include <vector>

#include "sgcalc/expr.hpp"
#include "sgcalc/grid_function.hpp"

namespace sgcalc {

enum class FnClass { H1, Hinf, Smirnov, measure_laplace };

// Holomorphic function on the half-plane Re z > alpha, carried by an
// expression tree or an opaque evaluator (outer-integral objects).
// The class tag is declared by the caller and spot-verified numerically.
class HalfPlaneFunction {
public:
    static HalfPlaneFunction from_expr(ExprPtr ast, double alpha, FnClass cls,
                                       bool outer = false, bool verify = true);
    static HalfPlaneFunction from_callable(std::function<Complex(Complex)> fn, double alpha,
                                           FnClass cls, std::string desc, bool outer = false);
    static HalfPlaneFunction parse(std::string_view src, double alpha, FnClass cls,
                                   bool outer = false, bool verify = true);

    Complex eval(Complex z) const;
    Complex boundary(double alpha, double y) const { return eval({alpha, y}); }

    double alpha() const { return alpha_; }
    FnClass cls() const { return cls_; }
    bool outer() const { return outer_; }
    const ExprPtr& ast() const { return ast_; }  // may be null
    const std::string& describe() const { return desc_; }

    // true when F(conj z) == conj F(z) at probe points (real inverse transform)
    bool real_symmetric() const;

    HalfPlaneFunction product(const HalfPlaneFunction& other, FnClass cls) const;

private:
    HalfPlaneFunction() = default;
    double alpha_ = 0.0;
    FnClass cls_ = FnClass::Hinf;
    bool outer_ = false;
    ExprPtr ast_;
    std::function<Complex(Complex)> fn_;
    std::string desc_;
    void spot_verify() const;
};

struct BoundarySample {
    double y;
    Complex value;
};

// m samples of F(alpha + i y) at uniform y in [-Y, Y] (inclusive); m a power of two.
std::vector<BoundarySample> boundary_samples(const HalfPlaneFunction& f, double alpha,
                                             double Y, int m);

// Majorant of the mass of |F| beyond +-Y assuming at-least-quadratic decay:
// Y * (|F(alpha+iY)| + |F(alpha-iY)|).
double boundary_tail_bound(const HalfPlaneFunction& f, double alpha, double Y);

// integral of |F(beta+iy)| dy, trapezoid on [-Y, Y] plus the tail majorant.
double h1_norm_estimate(const HalfPlaneFunction& f, double beta, double Y = 4096.0,
                        int m = 1 << 16);

struct InvLaplaceResult {
    GridFunction values;
    double budget = 0.0;  // frequency tail + dropped masses + imaginary residual
    double leakage_mass = 0.0;        // negative-time alias: top eighth of the period
    double beyond_horizon_mass = 0.0; // genuine mass between the horizon and the period
    double imag_residual = 0.0;       // imaginary mass removed by symmetrization
    double freq_tail = 0.0;
};

struct InvLaplaceParams {
    int min_period_factor = 4;   // FFT period >= factor * horizon
    double leak_tol = 0.05;      // error out beyond this aliasing mass
};

// Eq-(19)-style inversion: g(t) = (e^{alpha t}/2pi) * integral F(alpha+iy) e^{iyt} dy,
// discretized with Y = pi/step on an FFT lattice. Output is clipped to the grid;
// the dropped top-of-period mass is reported as leakage.
InvLaplaceResult inverse_laplace_fft(const HalfPlaneFunction& f, double alpha,
                                     const TimeGrid& grid, const InvLaplaceParams& = {});

// Outer function exp((1/pi) * integral [(1+it(z-alpha))/(it+z-alpha)] u(t)/(1+t^2) dt)
// from the boundary log-modulus u. Quadrature: t = tan(theta) then tanh-sinh per
// panel, with panel breaks at the caller's kinks and at the near-pole t = -Im(z-alpha).
HalfPlaneFunction outer_from_modulus(std::function<double(double)> log_modulus, double alpha,
                                     std::vector<double> breakpoints = {});

// Table input [(y, u(y))]; linear interpolation inside the range, edge values beyond.
HalfPlaneFunction outer_from_modulus_table(std::vector<std::pair<double, double>> table,
                                           double alpha);

// F_n = outer function with boundary log-modulus u_n(t) = min(-log|F*(alpha+it)|, n).
HalfPlaneFunction outer_regularizer(const HalfPlaneFunction& f, int n, double alpha);

}  // namespace sgcalc

#endif
