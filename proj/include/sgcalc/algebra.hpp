#ifndef SGCALC_ALGEBRA_HPP
#define SGCALC_ALGEBRA_HPP

#include "sgcalc/exec.hpp"
#include "sgcalc/grid_function.hpp"
#include "sgcalc/measure.hpp"
#include "sgcalc/weight.hpp"

namespace sgcalc {

// Discrete convolution scaled by step, trapezoid-corrected at the endpoints:
// (f*g)_k = step * (sum_{j<=k} f_j g_{k-j} - f_0 g_k / 2 - f_k g_0 / 2).
// Supported up to the common horizon; mass past it is truncated.
GridFunction convolve(const GridFunction& f, const GridFunction& g,
                      exec::Mode mode = exec::default_mode());

// Trapezoid approximation of the integral of |f| w.
double weighted_l1_norm(const GridFunction& f, const Weight& w);

// L(mu)(z) = integral of e^{-zt} dmu(t); trapezoid over the density, exact on atoms.
Complex laplace(const MeasureRepr& mu, Complex z);

// Bound on the truncated density tail, assuming the envelope keeps decaying
// past the horizon: |f(H)| e^{-Re z * H} / Re z (infinite if Re z <= 0).
double laplace_tail_bound(const MeasureRepr& mu, Complex z);

// Member n of the Dirac sequence: 5n(1-nt)^4 on [0,1/n], sampled and then
// rescaled to unit trapezoid mass. Support shrinks as a_n = 1/n.
GridFunction dirac_member(int n, const TimeGrid& grid);

// Same kernel translated by `shift` (the translate f_n * delta_shift).
GridFunction dirac_member_shifted(int n, double shift, const TimeGrid& grid);

// L1 norm of  f*delta_t - f + integral_0^t (f' * delta_s) ds,  with the s-integral
// taken by the left-rectangle rule so the residual scales linearly in step.
// Requires f(0) = 0; t is rounded to the grid lattice.
double fundamental_identity_check(const GridFunction& f, const GridFunction& fprime,
                                  double t);

}  // namespace sgcalc

#endif
