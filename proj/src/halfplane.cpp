#include "sgcalc/halfplane.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sgcalc/algebra.hpp"
#include "sgcalc/quadrature.hpp"

namespace sgcalc {

namespace {
bool pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

const std::vector<Complex>& probe_offsets() {
    static const std::vector<Complex> p = {
        {0.01, 0.0}, {0.1, 0.3},  {0.5, -1.0}, {1.0, 5.0},
        {2.0, -20.0}, {4.0, 100.0}, {8.0, 0.0},  {0.05, -300.0}};
    return p;
}
}  // namespace

HalfPlaneFunction HalfPlaneFunction::from_expr(ExprPtr ast, double alpha, FnClass cls,
                                               bool outer, bool verify) {
    HalfPlaneFunction f;
    f.alpha_ = alpha;
    f.cls_ = cls;
    f.outer_ = outer;
    f.ast_ = std::move(ast);
    f.desc_ = print_expr(f.ast_);
    if (verify) f.spot_verify();
    return f;
}

HalfPlaneFunction HalfPlaneFunction::from_callable(std::function<Complex(Complex)> fn,
                                                   double alpha, FnClass cls,
                                                   std::string desc, bool outer) {
    HalfPlaneFunction f;
    f.alpha_ = alpha;
    f.cls_ = cls;
    f.outer_ = outer;
    f.fn_ = std::move(fn);
    f.desc_ = std::move(desc);
    return f;
}

HalfPlaneFunction HalfPlaneFunction::parse(std::string_view src, double alpha, FnClass cls,
                                           bool outer, bool verify) {
    return from_expr(parse_expr(src), alpha, cls, outer, verify);
}

Complex HalfPlaneFunction::eval(Complex z) const {
    const Complex v = ast_ ? eval_expr(ast_, z) : fn_(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("HalfPlaneFunction: singularity at Re z = " +
                          std::to_string(z.real()) + ", Im z = " + std::to_string(z.imag()));
    return v;
}

void HalfPlaneFunction::spot_verify() const {
    // Division obligations and declared class, probed numerically.
    double bound = 0.0;
    for (const Complex& off : probe_offsets()) {
        const Complex v = eval(Complex(alpha_, 0.0) + off);  // throws if singular
        bound = std::max(bound, std::abs(v));
    }
    if (cls_ == FnClass::Hinf && bound > 1e12)
        throw DomainError("HalfPlaneFunction: declared Hinf but unbounded at probes");
    if (cls_ == FnClass::H1) {
        // crude integrability probe along a line just right of alpha
        const double beta = alpha_ + 1e-3;
        double mass = 0.0;
        const int m = 2048;
        const double Y = 512.0;
        const double dy = 2.0 * Y / m;
        for (int j = 0; j <= m; ++j) {
            const double y = -Y + j * dy;
            const double w = (j == 0 || j == m) ? 0.5 : 1.0;
            mass += w * std::abs(eval({beta, y})) * dy;
        }
        const double tail =
            Y * (std::abs(eval({beta, Y})) + std::abs(eval({beta, -Y})));
        if (!(mass + tail < 1e9))
            throw DomainError("HalfPlaneFunction: declared H1 but the boundary mass diverges");
    }
    if (outer_) {
        for (const Complex& off : probe_offsets())
            if (std::abs(eval(Complex(alpha_, 0.0) + off)) == 0.0)
                throw DomainError("HalfPlaneFunction: declared outer but vanishes at a probe");
    }
}

bool HalfPlaneFunction::real_symmetric() const {
    for (const Complex& off : probe_offsets()) {
        const Complex z = Complex(alpha_ + 0.3, 0.0) + off;
        const Complex a = eval(z);
        const Complex b = eval(std::conj(z));
        if (std::abs(b - std::conj(a)) > 1e-9 * (1.0 + std::abs(a))) return false;
    }
    return true;
}

HalfPlaneFunction HalfPlaneFunction::product(const HalfPlaneFunction& other,
                                             FnClass cls) const {
    const double a = std::max(alpha_, other.alpha_);
    if (ast_ && other.ast_) return from_expr(expr_mul(ast_, other.ast_), a, cls, false, false);
    auto self = *this;
    auto rhs = other;
    return from_callable([self, rhs](Complex z) { return self.eval(z) * rhs.eval(z); }, a,
                         cls, desc_ + "*" + other.desc_, false);
}

std::vector<BoundarySample> boundary_samples(const HalfPlaneFunction& f, double alpha,
                                             double Y, int m) {
    if (alpha < f.alpha())
        throw DomainError("boundary_samples: alpha left of the function's half-plane");
    if (!pow2(m)) throw DomainError("boundary_samples: m must be a power of two");
    if (!(Y > 0.0)) throw DomainError("boundary_samples: Y must be positive");
    std::vector<BoundarySample> out(static_cast<std::size_t>(m));
    const double dy = 2.0 * Y / (m - 1);
    for (int j = 0; j < m; ++j) {
        const double y = -Y + j * dy;
        out[static_cast<std::size_t>(j)] = {y, f.eval({alpha, y})};
    }
    return out;
}

double boundary_tail_bound(const HalfPlaneFunction& f, double alpha, double Y) {
    return Y * (std::abs(f.eval({alpha, Y})) + std::abs(f.eval({alpha, -Y})));
}

double h1_norm_estimate(const HalfPlaneFunction& f, double beta, double Y, int m) {
    if (beta < f.alpha()) throw DomainError("h1_norm_estimate: beta left of the half-plane");
    const double dy = 2.0 * Y / m;
    double mass = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        mass += w * std::abs(f.eval({beta, -Y + j * dy})) * dy;
    }
    return mass + boundary_tail_bound(f, beta, Y);
}

InvLaplaceResult inverse_laplace_fft(const HalfPlaneFunction& f, double alpha,
                                     const TimeGrid& grid, const InvLaplaceParams& params) {
    if (f.cls() != FnClass::H1)
        throw DomainError("inverse_laplace_fft: F must be classed H1");
    if (alpha < f.alpha())
        throw DomainError("inverse_laplace_fft: alpha left of the function's half-plane");

    std::size_t m = 1;
    const std::size_t want = static_cast<std::size_t>(params.min_period_factor) *
                             static_cast<std::size_t>(grid.count);
    while (m < want) m <<= 1;

    const double step = grid.step;
    const double Y = M_PI / step;  // Nyquist: Y * step = pi
    const double dy = 2.0 * Y / static_cast<double>(m);

    const bool symmetric = f.real_symmetric();

    // F sampled at y_k = -Y + k dy; FFTW backward supplies e^{+2pi i kj/m}.
    std::vector<Complex> buf(m);
    const std::size_t half = m / 2;
    for (std::size_t k = 0; k <= half; ++k) {
        const double y = -Y + static_cast<double>(k) * dy;
        buf[k] = f.eval({alpha, y});
    }
    for (std::size_t k = half + 1; k < m; ++k) {
        if (symmetric) {
            buf[k] = std::conj(buf[m - k]);
        } else {
            const double y = -Y + static_cast<double>(k) * dy;
            buf[k] = f.eval({alpha, y});
        }
    }

    std::vector<Complex> out(m);
    {
        // FFTW planning is not thread-safe; execution is.
        static std::mutex plan_mu;
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(plan_mu);
            plan = fftw_plan_dft_1d(static_cast<int>(m),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard<std::mutex> lock(plan_mu);
        fftw_destroy_plan(plan);
    }

    // g(t_j) = (e^{alpha t_j} / 2pi) dy (-1)^j DFT_j
    std::vector<Complex> g(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = static_cast<double>(j) * step;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        g[j] = out[j] * (sign * dy / (2.0 * M_PI) * std::exp(alpha * t));
    }

    InvLaplaceResult res;
    double imag_mass = 0.0, leak = 0.0, beyond = 0.0;
    const std::size_t top_eighth = m - m / 8;  // small negative times alias here
    for (std::size_t j = 0; j < m; ++j) {
        if (j < static_cast<std::size_t>(grid.count))
            imag_mass += std::abs(g[j].imag()) * step;
        else if (j >= top_eighth)
            leak += std::abs(g[j]) * step;
        else
            beyond += std::abs(g[j]) * step;
    }
    res.leakage_mass = leak;
    res.beyond_horizon_mass = beyond;
    res.imag_residual = symmetric ? imag_mass : 0.0;

    std::vector<Complex> clipped(static_cast<std::size_t>(grid.count));
    for (std::size_t j = 0; j < clipped.size(); ++j)
        clipped[j] = symmetric ? Complex(g[j].real(), 0.0) : g[j];
    res.values = GridFunction(grid, std::move(clipped));

    const double lfac = (alpha < -1e-12) ? (1.0 - std::exp(alpha * grid.horizon())) / -alpha
                                         : grid.horizon();
    // mass of |F| beyond +-Y (quadratic-decay majorant Y |F(+-iY)|), propagated
    // through e^{alpha t} in L1, with a factor-2 safety margin
    res.freq_tail = Y * (std::abs(f.eval({alpha, Y})) + std::abs(f.eval({alpha, -Y}))) /
                    (2.0 * M_PI) * lfac * 2.0;
    res.budget =
        res.freq_tail + res.leakage_mass + res.beyond_horizon_mass + res.imag_residual;
    if (res.leakage_mass > params.leak_tol)
        throw DomainError("inverse_laplace_fft: aliasing budget exceeded (leakage " +
                          std::to_string(res.leakage_mass) + ")");
    return res;
}

namespace {

struct OuterBody {
    std::function<double(double)> u;
    double alpha;
    std::vector<double> breaks_t;  // caller kinks, in t-space

    Complex eval(Complex z) const {
        const Complex w = z - alpha;
        if (!(w.real() > 0.0))
            throw DomainError("outer function: evaluation left of the half-plane");
        // I(w) = int (1+itw)/(it+w) * u(t)/(1+t^2) dt ; t = tan(theta).
        std::vector<double> cuts = {-M_PI_2, M_PI_2, std::atan(-w.imag())};
        for (double b : breaks_t) cuts.push_back(std::atan(b));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   cuts.end());
        Complex total{0.0, 0.0};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto integrand = [&](double theta) -> Complex {
                const double t = std::tan(theta);
                const Complex it{0.0, t};
                return (1.0 + it * w) / (it + w) * u(t);
            };
            total += tanh_sinh(integrand, cuts[i], cuts[i + 1], 1e-12, 9).value;
        }
        return std::exp(total / M_PI);
    }
};

}  // namespace

HalfPlaneFunction outer_from_modulus(std::function<double(double)> log_modulus, double alpha,
                                     std::vector<double> breakpoints) {
    // Poisson-integrability guard.
    double mass = 0.0;
    for (int j = -2048; j <= 2048; ++j) {
        const double t = std::tan(M_PI_2 * j / 2049.0);
        mass += std::abs(log_modulus(t)) / (1.0 + t * t);
    }
    if (!(mass < 1e12)) throw DomainError("outer_from_modulus: divergent Poisson integral");

    OuterBody body{std::move(log_modulus), alpha, std::move(breakpoints)};
    return HalfPlaneFunction::from_callable(
        [body](Complex z) { return body.eval(z); }, alpha, FnClass::Hinf,
        "outer(log-modulus)", true);
}

HalfPlaneFunction outer_from_modulus_table(std::vector<std::pair<double, double>> table,
                                           double alpha) {
    if (table.size() < 2) throw DomainError("outer_from_modulus_table: need >= 2 samples");
    std::sort(table.begin(), table.end());
    auto interp = [table = std::move(table)](double t) -> double {
        if (t <= table.front().first) return table.front().second;
        if (t >= table.back().first) return table.back().second;
        auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(t, -1e300));
        const auto hi = *it;
        const auto lo = *(it - 1);
        const double s = (t - lo.first) / (hi.first - lo.first);
        return lo.second + s * (hi.second - lo.second);
    };
    return outer_from_modulus(interp, alpha);
}

HalfPlaneFunction outer_regularizer(const HalfPlaneFunction& f, int n, double alpha) {
    if (!f.outer()) throw DomainError("outer_regularizer: F must be outer");
    if (n < 0) throw DomainError("outer_regularizer: n must be >= 0");
    auto f_copy = f;
    auto u_n = [f_copy, alpha, n](double t) -> double {
        const double mod = std::abs(f_copy.eval({alpha, t}));
        const double raw = (mod > 0.0) ? -std::log(mod) : static_cast<double>(n) + 1.0;
        return std::min(raw, static_cast<double>(n));
    };
    // Locate the |t| where -log|F*| crosses the cap; the kink is a panel break.
    std::vector<double> breaks;
    auto crossing = [&](double sgn) {
        double lo = 0.0, hi = 1.0;
        const double target = static_cast<double>(n);
        auto raw = [&](double t) {
            const double mod = std::abs(f_copy.eval({alpha, sgn * t}));
            return (mod > 0.0) ? -std::log(mod) : target + 1.0;
        };
        if (raw(lo) >= target) return;  // capped everywhere from the center out
        while (hi < 1e12 && raw(hi) < target) hi *= 2.0;
        if (hi >= 1e12) return;  // never reaches the cap
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (raw(mid) < target ? lo : hi) = mid;
        }
        breaks.push_back(sgn * 0.5 * (lo + hi));
    };
    crossing(1.0);
    crossing(-1.0);
    return outer_from_modulus(u_n, alpha, std::move(breaks));
}

}  // namespace sgcalc
