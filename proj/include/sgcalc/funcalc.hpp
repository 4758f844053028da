#ifndef SGCALC_FUNCALC_HPP
#define SGCALC_FUNCALC_HPP

#include <vector>

#include "sgcalc/backend.hpp"
#include "sgcalc/halfplane.hpp"
#include "sgcalc/measure.hpp"
#include "sgcalc/resolvent.hpp"

namespace sgcalc {

struct Budgeted {
    Operator value;
    double budget = 0.0;
};

// Formal fraction num/den over the image algebra; den carries a provenance tag
// for its dense-ideal witness (never inferred intrinsically).
struct QuasimultiplierFraction {
    enum class DenWitness { outer_h1_image, phi_v_lambda_image, user };
    Operator num, den;
    DenWitness witness = DenWitness::user;
    SemigroupBackend backend;
    double num_budget = 0.0, den_budget = 0.0;
};

struct LineQuadParams {
    double dy = 0.05;           // node spacing in the uniform core of the line
    double tail_target = 1e-8;  // requested bound on the truncated line tail
    double y_max = 1e6;         // hard cap on the tail cut
};

// F(-A) = -(1/2pi) * integral F*(alpha+iy) (A + (alpha+iy) I)^{-1} dy,
// trapezoid on the line (spectrally accurate for strip-analytic integrands),
// per-node resolvents by direct solves. Requires alpha < -growth_bound.
Budgeted funcalc_h1(const HalfPlaneFunction& f, const SemigroupBackend& b, double alpha,
                    const LineQuadParams& params = {});

// L(mu)(-A) = phi(mu), after checking an exponential-moment surrogate on the horizon.
Budgeted funcalc_measure(const MeasureRepr& mu, const SemigroupBackend& b);

// F(-A) as the fraction (FH)(-A) / H(-A) for outer H in H1.
QuasimultiplierFraction funcalc_quotient(const HalfPlaneFunction& f,
                                         const HalfPlaneFunction& h,
                                         const SemigroupBackend& b, double alpha,
                                         const LineQuadParams& params = {});

struct QmEval {
    enum class Status { ok, radical, singular };
    Status status = Status::ok;
    Operator value;             // meaningful when status == ok
    double residual = 0.0;      // ||den*value - num|| / ||num||
    double condition = 0.0;     // kappa_2(den)
    double den_inv_norm = 0.0;  // ||den^{-1}||, for propagating fraction budgets
    std::string message;
};

QmEval qm_evaluate(const QuasimultiplierFraction& s);

// Cross-multiplication equality ||n1 d2 - n2 d1|| <= tol * scale.
bool qm_equal(const QuasimultiplierFraction& s1, const QuasimultiplierFraction& s2,
              double tol);

struct GeneratorParams {
    double step = 0.000244140625;  // 2^-12
    double horizon = 40.0;
};

// A as the fraction -phi(v_lambda') / phi(v_lambda), lambda > growth bound.
QuasimultiplierFraction generator(const SemigroupBackend& b, double lambda,
                                  const GeneratorParams& params = {});

// ||(T(t)u - u)/t - A u|| for each t.
std::vector<double> difference_quotient_check(const SemigroupBackend& b, const Operator& u,
                                              const std::vector<double>& t_list);

struct RegularityProbeResult {
    double max_norm = 0.0;
    bool diverged = false;         // overflow guard (1e12) tripped
    bool radical_failure = false;  // fraction not evaluatable
    int depth_reached = 0;
};

// max_{n<=N} ||lam^n S^n witness||, powers via the evaluated fraction.
RegularityProbeResult regularity_probe(const QuasimultiplierFraction& s, double lam, int N,
                                       const Operator& witness);

// n-th mollified approximant: -(1/2pi) int Mn(alpha+iy) L(f)(alpha+iy)
// (A+(alpha+iy)I)^{-1} dy with Mn = (n-alpha)^2/(z+n-alpha)^2; boundary values
// of L(f) come from one forward FFT of the sampled density.
Budgeted regularized_funcalc(const GridFunction& f, const SemigroupBackend& b, double alpha,
                             int n);

}  // namespace sgcalc

#endif
