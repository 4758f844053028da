#ifndef SGCALC_QUADRATURE_HPP
#define SGCALC_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace sgcalc {

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double err = 0.0;
};

// Tanh-sinh (double-exponential) rule on a finite interval; robust against
// integrable endpoint singularities. Levels double the node density until the
// inter-level delta meets tol.
QuadResult tanh_sinh(const std::function<std::complex<double>(double)>& f, double a,
                     double b, double tol = 1e-12, int max_level = 9);

}  // namespace sgcalc

#endif
