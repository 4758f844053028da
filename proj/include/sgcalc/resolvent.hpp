#ifndef SGCALC_RESOLVENT_HPP
#define SGCALC_RESOLVENT_HPP

#include <complex>
#include <vector>

#include "sgcalc/backend.hpp"
#include "sgcalc/measure.hpp"

namespace sgcalc {

struct SpectrumReport {
    std::vector<Complex> points;
    bool radical = false;
};

struct ResolventResult {
    Operator value;
    double budget = 0.0;  // discretization estimate + certified tail + fp slack
};

struct ResolventParams {
    double margin = 0.05;       // required Re(lambda) - growth bound
    double step = 0.0009765625; // 2^-10
    double tail_target = 1e-12; // e^{-Re(lambda) H} ||T(H)|| at the chosen horizon
    double max_horizon = 1000.0;
};

// (lambda I - A)^{-1} = integral of e^{-lambda s} T(s) ds by composite Simpson
// over the sample cache, horizon extended until the certified tail target holds.
// The quasinilpotent shift is integrated piecewise-exactly (finite support) and
// accepts every lambda.
ResolventResult resolvent_laplace(const SemigroupBackend& b, Complex lambda,
                                  const ResolventParams& params = {});

// Closed form of the shift backend's resolvent: the exact integral of
// e^{-lambda s} S^{floor(s/h)}, summed per quantization cell.
Operator nilshift_resolvent_exact(const SemigroupBackend& b, Complex lambda);

// lambda I - M(lambda)  with  M(lambda)^{-1} = the exact integral above;
// inverting this matrix is the independent oracle route for the radical case.
Operator nilshift_quantized_generator_pencil(const SemigroupBackend& b, Complex lambda);

// Neumann continuation a -> a (I + (mu_k - mu_{k-1}) a)^{-1} along the straight
// segment from seed_lambda to mu, stepping so ||step * a|| <= 0.5. Errors out
// (instead of returning) when the walk collapses near the Arveson spectrum.
Operator resolvent_continued(const SemigroupBackend& b, Complex mu, Complex seed_lambda,
                             const ResolventParams& params = {});

SpectrumReport arveson_spectrum(const SemigroupBackend& b);

struct SpectralMappingResult {
    double residual = 0.0;
    bool schur_fallback = false;  // generator too far from diagonalizable
};

// max over eigenpairs of |eig(phi(mu)) - L(mu)(-a)|.
SpectralMappingResult spectral_mapping_residual(const SemigroupBackend& b,
                                                const MeasureRepr& mu);

}  // namespace sgcalc

#endif
