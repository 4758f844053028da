#include "sgcalc/funcalc.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>

#include "sgcalc/algebra.hpp"
#include "sgcalc/pettis.hpp"

namespace sgcalc {

namespace {

// (A + z I)^{-1}, by direct solve for matrix backends and by the exact
// piecewise resolvent for the quasinilpotent shift.
Operator neg_shifted_resolvent(const SemigroupBackend& b, Complex z) {
    if (b.kind() == SemigroupBackend::Kind::nilpotent_shift)
        return -nilshift_resolvent_exact(b, -z);
    const Operator a = *b.generator_matrix();
    const int d = b.dim();
    return (a + z * Operator::Identity(d, d)).partialPivLu().inverse();
}

void require_abscissa(const SemigroupBackend& b, double alpha, const char* who) {
    const double g = b.growth_bound();
    if (!(alpha < -g))
        throw DomainError(std::string(who) + ": alpha must lie left of -growth_bound");
}

// 16-point Gauss-Legendre on [-1,1], built once by Newton on P_16.
struct Gauss16 {
    double x[16];
    double w[16];
    Gauss16() {
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
                const double dx = p0 / pp;
                xi -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            x[i] = -xi;
            x[n - 1 - i] = xi;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
        }
    }
};

const Gauss16& gauss16() {
    static const Gauss16 g;
    return g;
}

struct LineNodes {
    std::vector<double> y;
    std::vector<double> w;
    double tail_est = 0.0;
    double y_cut = 0.0;
};

// Oscillation rate of the boundary values (phase derivative in y); exponential
// factors e^{-tz} show up as rate ~ t, rational functions as ~0.
double phase_rate(const std::function<Complex(Complex)>& boundary, double alpha) {
    double rate = 0.0;
    const double delta = 0.01;
    for (double y : {100.0, 300.0, 1000.0}) {
        const Complex f0 = boundary({alpha, y});
        const Complex f1 = boundary({alpha, y + delta});
        if (std::abs(f0) == 0.0 || std::abs(f1) == 0.0) continue;
        rate = std::max(rate, std::abs(std::arg(f1 / f0)) / delta);
    }
    return rate;
}

// Uniform trapezoid core on [-Y1, Y1] (covers the pole region), then
// Gauss-Legendre panels with phase-bounded widths out to the tail cut.
// `scale` > 1 coarsens every section for the Richardson-style budget.
LineNodes build_line_nodes(const std::function<Complex(Complex)>& boundary, double alpha,
                           double dy, double tail_target, double y_max,
                           double scale = 1.0) {
    LineNodes nodes;
    const double Y1 = 64.0;
    const std::size_t half = static_cast<std::size_t>(std::llround(Y1 / (dy * scale)));
    const double dyr = Y1 / static_cast<double>(half);
    for (std::size_t j = 0; j < 2 * half + 1; ++j) {
        nodes.y.push_back(-Y1 + static_cast<double>(j) * dyr);
        nodes.w.push_back((j == 0 || j == 2 * half) ? 0.5 * dyr : dyr);
    }

    // Tail cut from the quadratic-decay majorant of |F| ||R|| ~ C / y^3.
    const double f1 = std::abs(boundary({alpha, Y1})) + std::abs(boundary({alpha, -Y1}));
    const double c = f1 * Y1 * Y1;
    double y_cut = std::sqrt(c / std::max(tail_target * 2.0 * M_PI, 1e-300));
    y_cut = std::min(std::max(y_cut, 2.0 * Y1), y_max);

    const double rate = phase_rate(boundary, alpha);
    const Gauss16& g = gauss16();
    for (int side = 0; side < 2; ++side) {
        double p = Y1;
        while (p < y_cut) {
            double width = p * scale;  // an octave at scale 1
            if (rate > 0.0) width = std::min(width, scale * 10.0 / rate);
            width = std::min(width, y_cut - p);
            const double mid = p + 0.5 * width;
            for (int i = 0; i < 16; ++i) {
                const double yy = mid + 0.5 * width * g.x[i];
                nodes.y.push_back(side == 0 ? yy : -yy);
                nodes.w.push_back(0.5 * width * g.w[i]);
            }
            p += width;
        }
    }
    nodes.y_cut = y_cut;
    nodes.tail_est = (std::abs(boundary({alpha, y_cut})) +
                      std::abs(boundary({alpha, -y_cut}))) /
                     2.0 / (2.0 * M_PI) * 2.0;
    return nodes;
}

Operator line_sum(const std::function<Complex(Complex)>& boundary,
                  const SemigroupBackend& b, double alpha, const LineNodes& nodes) {
    const int d = b.dim();
    return exec::indexed_sum<Operator>(
        nodes.y.size(), Operator::Zero(d, d),
        [&](std::size_t j) {
            const Complex z(alpha, nodes.y[j]);
            return Operator((nodes.w[j] * boundary(z)) * neg_shifted_resolvent(b, z));
        },
        exec::default_mode());
}

// Value plus a budget from a half-resolution re-run and the tail majorant.
Budgeted line_integral(const std::function<Complex(Complex)>& boundary,
                       const SemigroupBackend& b, double alpha, double dy,
                       double tail_target, double y_max) {
    const LineNodes fine = build_line_nodes(boundary, alpha, dy, tail_target, y_max);
    const LineNodes coarse =
        build_line_nodes(boundary, alpha, dy, tail_target, y_max, 2.0);
    const Operator sf = line_sum(boundary, b, alpha, fine);
    const Operator sc = line_sum(boundary, b, alpha, coarse);
    Budgeted out;
    out.value = -sf / (2.0 * M_PI);
    out.budget = opnorm(sf - sc) / (2.0 * M_PI) + fine.tail_est +
                 1e-14 * (1.0 + opnorm(out.value));
    return out;
}

}  // namespace

Budgeted funcalc_h1(const HalfPlaneFunction& f, const SemigroupBackend& b, double alpha,
                    const LineQuadParams& params) {
    require_abscissa(b, alpha, "funcalc_h1");
    if (f.cls() != FnClass::H1) throw DomainError("funcalc_h1: F must be classed H1");
    if (alpha < f.alpha()) throw DomainError("funcalc_h1: alpha left of F's half-plane");

    auto boundary = [&f](Complex z) { return f.eval(z); };

    // Keep the node spacing well inside the analyticity strip when the
    // resolvent poles sit close to the line.
    double dy = params.dy;
    const double g = b.growth_bound();
    if (std::isfinite(g)) dy = std::min(dy, (-g - alpha) / 5.0);

    return line_integral(boundary, b, alpha, dy, params.tail_target, params.y_max);
}

Budgeted funcalc_measure(const MeasureRepr& mu, const SemigroupBackend& b) {
    if (mu.density) {
        const GridFunction& f = *mu.density;
        const double g = b.growth_bound();
        const double a0 = std::isfinite(g) ? ((-g > 0.0) ? 0.9 * (-g) : -g - 0.1) : 1.0;
        double peak = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k) {
            const double h =
                std::abs(f.values[k]) * std::exp(-a0 * f.grid.t(static_cast<std::int64_t>(k)));
            peak = std::max(peak, h);
        }
        const double hH = std::abs(f.values.back()) * std::exp(-a0 * f.grid.horizon());
        if (peak > 0.0 && hH > 1e-6 * peak)
            throw DomainError("funcalc_measure: exponential moment unverifiable on horizon");
    }
    Budgeted out;
    out.value = phi(b, mu);
    // Second-difference trapezoid estimate over the density.
    double budget = 1e-14;
    if (mu.density) {
        const GridFunction& f = *mu.density;
        auto ts = b.samples(f.grid);
        const std::size_t n = f.values.size();
        const std::size_t stride = std::max<std::size_t>(1, n / 2048);
        double diff2 = 0.0;
        for (std::size_t k = stride; k + stride < n; k += stride) {
            const Operator d2 = f.values[k - stride] * (*ts)[k - stride] -
                                2.0 * f.values[k] * (*ts)[k] +
                                f.values[k + stride] * (*ts)[k + stride];
            diff2 += opnorm(d2);
        }
        budget += diff2 * f.grid.step / (12.0 * static_cast<double>(stride)) * 2.0;
    }
    out.budget = budget;
    return out;
}

QuasimultiplierFraction funcalc_quotient(const HalfPlaneFunction& f,
                                         const HalfPlaneFunction& h,
                                         const SemigroupBackend& b, double alpha,
                                         const LineQuadParams& params) {
    require_abscissa(b, alpha, "funcalc_quotient");
    if (!(f.cls() == FnClass::Hinf || f.cls() == FnClass::Smirnov))
        throw DomainError("funcalc_quotient: F must be classed Hinf or Smirnov");
    if (h.cls() != FnClass::H1 || !h.outer())
        throw DomainError("funcalc_quotient: H must be outer and classed H1");

    const HalfPlaneFunction fh = f.product(h, FnClass::H1);
    const Budgeted num = funcalc_h1(fh, b, alpha, params);
    const Budgeted den = funcalc_h1(h, b, alpha, params);
    QuasimultiplierFraction s;
    s.num = num.value;
    s.den = den.value;
    s.witness = QuasimultiplierFraction::DenWitness::outer_h1_image;
    s.backend = b;
    s.num_budget = num.budget;
    s.den_budget = den.budget;
    return s;
}

QmEval qm_evaluate(const QuasimultiplierFraction& s) {
    QmEval out;
    Eigen::JacobiSVD<Operator> svd(s.den);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    out.condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
    out.den_inv_norm = (smin > 0.0) ? 1.0 / smin : std::numeric_limits<double>::infinity();
    if (!(smin > 1e-12 * std::max(smax, 1e-300))) {
        out.status = (s.backend.kind() == SemigroupBackend::Kind::nilpotent_shift)
                         ? QmEval::Status::radical
                         : QmEval::Status::singular;
        out.message = out.status == QmEval::Status::radical
                          ? "quotient not evaluatable; radical case"
                          : "denominator numerically singular";
        out.value = Operator::Zero(s.den.rows(), s.den.cols());
        return out;
    }
    out.value = s.den.partialPivLu().solve(s.num);
    out.residual = opnorm(s.den * out.value - s.num) / std::max(opnorm(s.num), 1e-300);
    return out;
}

bool qm_equal(const QuasimultiplierFraction& s1, const QuasimultiplierFraction& s2,
              double tol) {
    const double scale = opnorm(s1.num) * opnorm(s2.den) + opnorm(s2.num) * opnorm(s1.den);
    const double resid = opnorm(s1.num * s2.den - s2.num * s1.den);
    return resid <= tol * std::max(scale, 1e-300);
}

QuasimultiplierFraction generator(const SemigroupBackend& b, double lambda,
                                  const GeneratorParams& params) {
    if (!(lambda > b.growth_bound()))
        throw DomainError("generator: lambda must exceed the growth bound");
    const TimeGrid grid = make_grid(params.step, params.horizon);
    const Budgeted den = funcalc_measure(MeasureRepr(v_lambda(grid, lambda)), b);
    const Budgeted num = funcalc_measure(MeasureRepr(v_lambda_prime(grid, lambda)), b);
    QuasimultiplierFraction s;
    s.num = -num.value;
    s.den = den.value;
    s.witness = QuasimultiplierFraction::DenWitness::phi_v_lambda_image;
    s.backend = b;
    s.num_budget = num.budget;
    s.den_budget = den.budget;
    return s;
}

std::vector<double> difference_quotient_check(const SemigroupBackend& b, const Operator& u,
                                              const std::vector<double>& t_list) {
    const auto a = b.generator_matrix();
    if (!a) throw DomainError("difference_quotient_check: backend has no generator matrix");
    const Operator au = (*a) * u;
    std::vector<double> out;
    out.reserve(t_list.size());
    for (double t : t_list) {
        if (!(t > 0.0)) throw DomainError("difference_quotient_check: t must be > 0");
        out.push_back(opnorm((b.evaluate(t) * u - u) / t - au));
    }
    return out;
}

RegularityProbeResult regularity_probe(const QuasimultiplierFraction& s, double lam, int N,
                                       const Operator& witness) {
    RegularityProbeResult out;
    const QmEval ev = qm_evaluate(s);
    if (ev.status != QmEval::Status::ok) {
        out.radical_failure = true;
        return out;
    }
    Operator cur = witness;
    for (int n = 1; n <= N; ++n) {
        cur = lam * (ev.value * cur);
        const double norm = opnorm(cur);
        out.max_norm = std::max(out.max_norm, norm);
        out.depth_reached = n;
        if (norm > 1e12) {
            out.diverged = true;
            break;
        }
    }
    return out;
}

Budgeted regularized_funcalc(const GridFunction& f, const SemigroupBackend& b, double alpha,
                             int n) {
    require_abscissa(b, alpha, "regularized_funcalc");
    if (n < 1) throw DomainError("regularized_funcalc: n must be >= 1");

    // Boundary values of L(f) on the whole line Re z = alpha by one forward FFT.
    const std::size_t count = f.values.size();
    std::size_t m = 1;
    while (m < 4 * count) m <<= 1;
    const double step = f.grid.step;

    std::vector<Complex> buf(m, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < count; ++k)
        buf[k] = f.values[k] * std::exp(-alpha * f.grid.t(static_cast<std::int64_t>(k)));

    std::vector<Complex> dft(m);
    {
        static std::mutex plan_mu;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(plan_mu);
            plan = fftw_plan_dft_1d(static_cast<int>(m),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(dft.data()),
                                    FFTW_FORWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(plan_mu);
        fftw_destroy_plan(plan);
    }

    const double dy = 2.0 * M_PI / (static_cast<double>(m) * step);
    const double na = static_cast<double>(n) - alpha;
    const int d = b.dim();

    // Trapezoid endpoint correction of the forward transform: half weight at t=0.
    const Complex half0 = 0.5 * buf[0];

    Operator fine = exec::indexed_sum<Operator>(
        m, Operator::Zero(d, d),
        [&](std::size_t j) {
            // signed frequency for bin j
            const double y =
                (j <= m / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m)) *
                dy;
            const Complex z(alpha, y);
            const Complex lf = (dft[j] - half0) * step;
            const Complex mn = (na * na) / ((z + na) * (z + na));
            return Operator((dy * mn * lf) * neg_shifted_resolvent(b, z));
        },
        exec::default_mode());

    Budgeted out;
    out.value = -fine / (2.0 * M_PI);
    // Numerical budget only (quadrature of the n-th approximant, not the n-limit).
    const double tail_f = std::abs(dft[m / 2] * step) / (2.0 * M_PI);
    out.budget = tail_f + 1e-12 * (1.0 + opnorm(out.value));
    return out;
}

}  // namespace sgcalc
