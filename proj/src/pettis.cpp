#include "sgcalc/pettis.hpp"

#include <cmath>

#include "sgcalc/algebra.hpp"

namespace sgcalc {

Operator phi(const SemigroupBackend& b, const MeasureRepr& mu, exec::Mode mode,
             double tail_tol) {
    const int d = b.dim();
    Operator acc = Operator::Zero(d, d);
    if (mu.density) {
        const GridFunction& f = *mu.density;
        auto ts = b.samples(f.grid);
        const std::size_t n = f.values.size();

        // Decay guard: the weighted envelope at the horizon must be negligible
        // against its peak, otherwise the truncated integral is meaningless.
        double peak = 0.0;
        const double g0 = std::abs(f.values.front()) * opnorm(ts->front());
        const double gH = std::abs(f.values.back()) * opnorm(ts->back());
        for (std::size_t k = 0; k < n; k += std::max<std::size_t>(1, n / 64))
            peak = std::max(peak, std::abs(f.values[k]) * opnorm((*ts)[k]));
        peak = std::max(peak, std::max(g0, gH));
        if (peak > 0.0 && gH > tail_tol * peak)
            throw DomainError(
                "phi: weighted tail not negligible on the horizon (measure outside the "
                "weighted algebra at this truncation)");

        const double step = f.grid.step;
        acc = exec::indexed_sum<Operator>(
            n, Operator::Zero(d, d),
            [&](std::size_t k) {
                double w = step;
                if (k == 0 || k + 1 == n) w *= 0.5;
                return Operator((w * f.values[k]) * (*ts)[k]);
            },
            mode);
    }
    for (const MeasureRepr::Atom& at : mu.atoms) acc += at.mass * b.evaluate(at.t);
    return acc;
}

double homomorphism_residual(const SemigroupBackend& b, const GridFunction& f,
                             const GridFunction& g) {
    const GridFunction fg = convolve(f, g);
    const Operator lhs = phi(b, MeasureRepr(fg));
    const Operator rhs = phi(b, MeasureRepr(f)) * phi(b, MeasureRepr(g));
    return opnorm(lhs - rhs);
}

namespace {
Operator approximate_identity_member(const SemigroupBackend& b, int n, const TimeGrid& grid) {
    const double eps = 1.0 / (static_cast<double>(n) * n);
    return phi(b, MeasureRepr(dirac_member_shifted(n, eps, grid)), exec::Mode::serial);
}
}  // namespace

std::vector<double> approximate_identity_trace(const SemigroupBackend& b, const Operator& u,
                                               int nmax, const TimeGrid& grid) {
    if (nmax < 1) throw DomainError("approximate_identity_trace: nmax must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(nmax));
    exec::parallel_for(
        static_cast<std::size_t>(nmax),
        [&](std::size_t i) {
            const Operator e = approximate_identity_member(b, static_cast<int>(i) + 1, grid);
            out[i] = opnorm(e * u - u);
        },
        exec::default_mode());
    return out;
}

std::vector<double> approximate_identity_norms(const SemigroupBackend& b, int nmax,
                                               const TimeGrid& grid) {
    if (nmax < 1) throw DomainError("approximate_identity_norms: nmax must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(nmax));
    exec::parallel_for(
        static_cast<std::size_t>(nmax),
        [&](std::size_t i) {
            out[i] = opnorm(approximate_identity_member(b, static_cast<int>(i) + 1, grid));
        },
        exec::default_mode());
    return out;
}

}  // namespace sgcalc
