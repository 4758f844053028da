#include "sgcalc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sgcalc {

namespace {
exec::Mode g_default_mode = exec::Mode::parallel;
}

namespace exec {
Mode default_mode() { return g_default_mode; }
void set_default_mode(Mode m) { g_default_mode = m; }
}  // namespace exec

GridFunction sample(const TimeGrid& grid, const std::function<Complex(double)>& f) {
    std::vector<Complex> v(static_cast<std::size_t>(grid.count));
    for (std::int64_t k = 0; k < grid.count; ++k) v[static_cast<std::size_t>(k)] = f(grid.t(k));
    return GridFunction(grid, std::move(v));
}

GridFunction zero_function(const TimeGrid& grid) {
    return GridFunction(grid, std::vector<Complex>(static_cast<std::size_t>(grid.count)));
}

GridFunction v_lambda(const TimeGrid& grid, double lambda) {
    return sample(grid, [lambda](double t) { return Complex(t * std::exp(-lambda * t), 0.0); });
}

GridFunction v_lambda_prime(const TimeGrid& grid, double lambda) {
    return sample(grid, [lambda](double t) {
        return Complex((1.0 - lambda * t) * std::exp(-lambda * t), 0.0);
    });
}

Complex trapezoid_integral(const GridFunction& f) {
    Complex acc{0.0, 0.0};
    for (const Complex& v : f.values) acc += v;
    acc -= 0.5 * (f.values.front() + f.values.back());
    return acc * f.grid.step;
}

double l1_norm(const GridFunction& f) {
    double acc = 0.0;
    for (const Complex& v : f.values) acc += std::abs(v);
    acc -= 0.5 * (std::abs(f.values.front()) + std::abs(f.values.back()));
    return acc * f.grid.step;
}

double l1_distance(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid)) throw DomainError("l1_distance: grid mismatch");
    double acc = 0.0;
    const std::size_t n = f.values.size();
    for (std::size_t k = 0; k < n; ++k) acc += std::abs(f.values[k] - g.values[k]);
    acc -= 0.5 * (std::abs(f.values.front() - g.values.front()) +
                  std::abs(f.values.back() - g.values.back()));
    return acc * f.grid.step;
}

Weight::Weight(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<std::int64_t>(values.size()) != grid.count)
        throw DomainError("Weight: values size must equal grid count");
    for (double x : values)
        if (!(x > 0.0) || !std::isfinite(x))
            throw DomainError("Weight: values must be positive and finite");
}

Weight constant_weight(const TimeGrid& grid, double c) {
    return Weight(grid, std::vector<double>(static_cast<std::size_t>(grid.count), c));
}

Weight exp_weight(const TimeGrid& grid, double lambda) {
    std::vector<double> v(static_cast<std::size_t>(grid.count));
    for (std::int64_t k = 0; k < grid.count; ++k)
        v[static_cast<std::size_t>(k)] = std::exp(lambda * grid.t(k));
    return Weight(grid, std::move(v));
}

Weight sample_weight(const TimeGrid& grid, const std::function<double(double)>& w) {
    std::vector<double> v(static_cast<std::size_t>(grid.count));
    for (std::int64_t k = 0; k < grid.count; ++k) v[static_cast<std::size_t>(k)] = w(grid.t(k));
    return Weight(grid, std::move(v));
}

Weight regularized_weight(const Weight& w, double lambda) {
    const std::size_t n = w.values.size();
    std::vector<double> damped(n);
    for (std::size_t k = 0; k < n; ++k)
        damped[k] = std::exp(-lambda * w.grid.t(static_cast<std::int64_t>(k))) * w.values[k];

    // The horizon cannot certify sup_{s>=t} if the damped weight is still
    // climbing into the last node: that is the lambda <= log(rho) signature.
    std::size_t argmax = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (damped[k] > damped[argmax]) argmax = k;
    if (argmax == n - 1 && damped[n - 1] > damped[n - 2])
        throw DomainError(
            "regularized_weight: e^{-lambda t} w(t) increasing at the horizon "
            "(lambda <= log rho; tail supremum diverges on this grid)");

    std::vector<double> out(n);
    double running = damped[n - 1];
    for (std::size_t k = n; k-- > 0;) {
        running = std::max(running, damped[k]);
        out[k] = std::exp(lambda * w.grid.t(static_cast<std::int64_t>(k))) * running;
    }
    return Weight(w.grid, std::move(out));
}

double submultiplicativity_violation(const Weight& w) {
    const std::int64_t n = w.grid.count;
    double worst = 0.0;
    for (std::int64_t j = 0; j < n; ++j)
        for (std::int64_t k = 0; j + k < n; ++k) {
            const double ratio = w.values[static_cast<std::size_t>(j + k)] /
                                 (w.values[static_cast<std::size_t>(j)] *
                                  w.values[static_cast<std::size_t>(k)]);
            worst = std::max(worst, ratio - 1.0);
        }
    return worst;
}

MeasureRepr::MeasureRepr(std::vector<Atom> a) : atoms(std::move(a)) {
    for (const Atom& at : atoms)
        if (at.t < 0.0) throw DomainError("MeasureRepr: atom location must be >= 0");
}

MeasureRepr::MeasureRepr(GridFunction d, std::vector<Atom> a)
    : density(std::move(d)), atoms(std::move(a)) {
    for (const Atom& at : atoms)
        if (at.t < 0.0) throw DomainError("MeasureRepr: atom location must be >= 0");
}

MeasureRepr MeasureRepr::dirac(double t) {
    if (t < 0.0) throw DomainError("MeasureRepr: atom location must be >= 0");
    MeasureRepr mu;
    mu.atoms.push_back(Atom{t, Complex(1.0, 0.0)});
    return mu;
}

double weighted_total_variation(const MeasureRepr& mu, const Weight& w) {
    double acc = 0.0;
    if (mu.density) {
        if (!(mu.density->grid == w.grid))
            throw DomainError("weighted_total_variation: grid mismatch");
        const std::size_t n = mu.density->values.size();
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::abs(mu.density->values[k]) * w.values[k];
        s -= 0.5 * (std::abs(mu.density->values.front()) * w.values.front() +
                    std::abs(mu.density->values.back()) * w.values.back());
        acc += s * w.grid.step;
    }
    for (const MeasureRepr::Atom& at : mu.atoms) {
        const std::int64_t k = std::llround(at.t / w.grid.step);
        const std::size_t idx =
            static_cast<std::size_t>(std::clamp<std::int64_t>(k, 0, w.grid.count - 1));
        acc += std::abs(at.mass) * w.values[idx];
    }
    return acc;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g, exec::Mode mode) {
    if (!(f.grid == g.grid)) throw DomainError("convolve: grid mismatch");
    const std::size_t n = f.values.size();
    const double step = f.grid.step;
    std::vector<Complex> out(n);
    const Complex* fv = f.values.data();
    const Complex* gv = g.values.data();
    exec::parallel_for(
        n,
        [&](std::size_t k) {
            Complex acc{0.0, 0.0};
            for (std::size_t j = 0; j <= k; ++j) acc += fv[j] * gv[k - j];
            acc -= 0.5 * (fv[0] * gv[k] + fv[k] * gv[0]);
            out[k] = acc * step;
        },
        mode);
    return GridFunction(f.grid, std::move(out));
}

double weighted_l1_norm(const GridFunction& f, const Weight& w) {
    if (!(f.grid == w.grid)) throw DomainError("weighted_l1_norm: grid mismatch");
    const std::size_t n = f.values.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += std::abs(f.values[k]) * w.values[k];
    acc -= 0.5 * (std::abs(f.values.front()) * w.values.front() +
                  std::abs(f.values.back()) * w.values.back());
    return acc * f.grid.step;
}

Complex laplace(const MeasureRepr& mu, Complex z) {
    Complex acc{0.0, 0.0};
    if (mu.density) {
        const GridFunction& d = *mu.density;
        const std::size_t n = d.values.size();
        Complex s{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
            s += d.values[k] * std::exp(-z * d.grid.t(static_cast<std::int64_t>(k)));
        s -= 0.5 * (d.values.front() +
                    d.values.back() * std::exp(-z * d.grid.horizon()));
        acc += s * d.grid.step;
    }
    for (const MeasureRepr::Atom& at : mu.atoms) acc += at.mass * std::exp(-z * at.t);
    return acc;
}

double laplace_tail_bound(const MeasureRepr& mu, Complex z) {
    if (!mu.density) return 0.0;
    if (z.real() <= 0.0) return std::numeric_limits<double>::infinity();
    const GridFunction& d = *mu.density;
    const double H = d.grid.horizon();
    return std::abs(d.values.back()) * std::exp(-z.real() * H) / z.real();
}

namespace {
GridFunction dirac_kernel(int n, double shift, const TimeGrid& grid) {
    if (n < 1) throw DomainError("dirac_member: n must be >= 1");
    const double a = 1.0 / static_cast<double>(n);
    if (a < grid.step)
        throw DomainError("dirac_member: support 1/n falls under one grid step");
    if (shift + a > grid.horizon())
        throw DomainError("dirac_member: shifted support exceeds the grid horizon");
    std::vector<Complex> v(static_cast<std::size_t>(grid.count), Complex(0.0, 0.0));
    for (std::int64_t k = 0; k < grid.count; ++k) {
        const double u = (grid.t(k) - shift) * n;
        if (u >= 0.0 && u <= 1.0) {
            const double w = 1.0 - u;
            const double w2 = w * w;
            v[static_cast<std::size_t>(k)] = Complex(5.0 * n * w2 * w2, 0.0);
        }
    }
    GridFunction f(grid, std::move(v));
    const double mass = trapezoid_integral(f).real();
    if (!(mass > 0.0)) throw DomainError("dirac_member: kernel not resolved by the grid");
    for (Complex& x : f.values) x /= mass;
    return f;
}
}  // namespace

GridFunction dirac_member(int n, const TimeGrid& grid) { return dirac_kernel(n, 0.0, grid); }

GridFunction dirac_member_shifted(int n, double shift, const TimeGrid& grid) {
    if (shift < 0.0) throw DomainError("dirac_member_shifted: shift must be >= 0");
    return dirac_kernel(n, shift, grid);
}

double fundamental_identity_check(const GridFunction& f, const GridFunction& fprime,
                                  double t) {
    if (!(f.grid == fprime.grid)) throw DomainError("fundamental_identity_check: grid mismatch");
    if (std::abs(f.values.front()) > 1e-9)
        throw DomainError("fundamental_identity_check: f(0) != 0 beyond tolerance");
    if (t < 0.0) throw DomainError("fundamental_identity_check: t must be >= 0");
    const std::int64_t n = f.grid.count;
    const std::int64_t K = std::llround(t / f.grid.step);
    if (K >= n) throw DomainError("fundamental_identity_check: t exceeds the grid horizon");

    // prefix[j] = sum_{i<=j} f'(t_i); the left-rectangle s-integral at node j is
    // step * (prefix[j] - prefix[j-K]).
    std::vector<Complex> prefix(static_cast<std::size_t>(n));
    Complex run{0.0, 0.0};
    for (std::int64_t j = 0; j < n; ++j) {
        run += fprime.values[static_cast<std::size_t>(j)];
        prefix[static_cast<std::size_t>(j)] = run;
    }

    std::vector<Complex> resid(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        const Complex shifted =
            (j >= K) ? f.values[static_cast<std::size_t>(j - K)] : Complex(0.0, 0.0);
        Complex window = prefix[static_cast<std::size_t>(j)];
        if (j - K >= 0) window -= prefix[static_cast<std::size_t>(j - K)];
        resid[static_cast<std::size_t>(j)] =
            shifted - f.values[static_cast<std::size_t>(j)] + f.grid.step * window;
    }
    return l1_norm(GridFunction(f.grid, std::move(resid)));
}

}  // namespace sgcalc
