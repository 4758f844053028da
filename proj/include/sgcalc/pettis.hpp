#ifndef SGCALC_PETTIS_HPP
#define SGCALC_PETTIS_HPP

#include <vector>

#include "sgcalc/backend.hpp"
#include "sgcalc/exec.hpp"
#include "sgcalc/measure.hpp"

namespace sgcalc {

// phi(mu) = integral of T(t) dmu(t): trapezoid over the density against the
// cached grid samples, exact evaluation on atoms. Throws when the weighted
// integrand has visibly not decayed by the horizon (mu outside the algebra
// at this truncation).
Operator phi(const SemigroupBackend& b, const MeasureRepr& mu,
             exec::Mode mode = exec::default_mode(), double tail_tol = 1e-6);

// ||phi(f*g) - phi(f) phi(g)||.
double homomorphism_residual(const SemigroupBackend& b, const GridFunction& f,
                             const GridFunction& g);

// Residuals ||phi(f_n * delta_{eps_n}) u - u|| for n = 1..nmax, eps_n = 1/n^2.
std::vector<double> approximate_identity_trace(const SemigroupBackend& b, const Operator& u,
                                               int nmax,
                                               const TimeGrid& grid = default_grid());

// Norms ||phi(f_n * delta_{eps_n})|| for the same sequence.
std::vector<double> approximate_identity_norms(const SemigroupBackend& b, int nmax,
                                               const TimeGrid& grid = default_grid());

}  // namespace sgcalc

#endif
