#include "sgcalc/suite.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "sgcalc/algebra.hpp"
#include "sgcalc/funcalc.hpp"
#include "sgcalc/json_io.hpp"
#include "sgcalc/oracle.hpp"
#include "sgcalc/pettis.hpp"
#include "sgcalc/resolvent.hpp"

namespace sgcalc {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

CriterionResult make(const std::string& id, const std::string& desc, double residual,
                     double budget, bool extra_ok = true) {
    CriterionResult r;
    r.id = id;
    r.description = desc;
    r.residual = residual;
    r.budget = budget;
    r.pass = extra_ok && residual <= budget;
    return r;
}

Operator direct_resolvent(const Operator& a, Complex lam) {
    const Eigen::Index d = a.rows();
    return (lam * Operator::Identity(d, d) - a).partialPivLu().inverse();
}

// --- AC01: resolvent formula vs direct inverse on random stable backends ---
CriterionResult ac01(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x01);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0, worst_budget = 0.0;
    bool dyn_ok = true;
    for (int i = 0; i < 20; ++i) {
        const Operator a = random_stable_matrix(4, rng);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(a);
        const ResolventResult r = resolvent_laplace(b, Complex(1.0, 0.0));
        const double resid = opnorm(r.value - direct_resolvent(a, {1.0, 0.0}));
        dyn_ok = dyn_ok && resid <= r.budget;
        worst = std::max(worst, resid);
        worst_budget = std::max(worst_budget, r.budget);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool time_ok = secs <= 5.0;
    return make("AC01",
                "Laplace-quadrature resolvent vs direct inverse, 20 random stable 4x4, "
                "lambda=1 (runtime " + fmt(secs) + "s <= 5s; dynamic budget " +
                    fmt(worst_budget) + ")",
                worst, 1e-6, time_ok && dyn_ok);
}

// --- AC02: resolvent identity on random pairs ---
CriterionResult ac02(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x02);
    const Operator a = random_stable_matrix(4, rng);
    const SemigroupBackend b = SemigroupBackend::matrix_exp(a);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Complex lam = rng.uniform_complex(0.2, 2.0, -2.0, 2.0);
        const Complex mu = rng.uniform_complex(0.2, 2.0, -2.0, 2.0);
        const Operator rl = resolvent_laplace(b, lam).value;
        const Operator rm = resolvent_laplace(b, mu).value;
        worst = std::max(worst, opnorm(rl - rm - (mu - lam) * rl * rm));
    }
    return make("AC02", "resolvent identity R(l)-R(m)=(m-l)R(l)R(m), 50 random pairs",
                worst, 1e-6);
}

// --- AC03: analytic continuation agreement + mandatory error inside the spectrum ---
CriterionResult ac03(const SuiteConfig& cfg) {
    (void)cfg;
    const SemigroupBackend b = SemigroupBackend::diagonal({{-1.0, 0.0}, {-2.0, 0.0}});
    const Operator a = *b.generator_matrix();
    const std::vector<Complex> targets = {
        {-0.5, 2.0},  {-3.0, 1.0},  {-2.5, -0.7}, {0.2, 0.0},   {-1.5, 3.0},
        {-4.0, 0.5},  {-0.2, -1.2}, {-3.5, 2.2},  {-1.0, 0.8},  {-2.0, 2.0}};
    double worst = 0.0;
    for (const Complex& mu : targets) {
        const Operator cont = resolvent_continued(b, mu, {1.0, 0.0});
        worst = std::max(worst, opnorm(cont - direct_resolvent(a, mu)));
    }
    bool errored = false;
    try {
        (void)resolvent_continued(b, {-1.0, 0.0}, {1.0, 0.0});
    } catch (const DomainError&) {
        errored = true;
    }
    bool errored2 = false;
    try {
        (void)resolvent_continued(b, {-2.0, 0.0}, {1.0, 0.0});
    } catch (const DomainError&) {
        errored2 = true;
    }
    return make("AC03",
                "Neumann continuation vs direct inverse at 10 targets left of the Laplace "
                "abscissa; continuation into the spectrum raises",
                worst, 1e-6, errored && errored2);
}

// --- AC04: radical backend ---
CriterionResult ac04(const SuiteConfig& cfg) {
    (void)cfg;
    const SemigroupBackend b = SemigroupBackend::nilpotent_shift(8, 0.125);
    const bool growth_ok = std::isinf(b.growth_bound()) && b.growth_bound() < 0.0;
    const Complex lam(-5.0, 0.0);
    const Operator r = resolvent_laplace(b, lam).value;
    const Operator pencil = nilshift_quantized_generator_pencil(b, lam);
    const Operator oracle = pencil.partialPivLu().inverse();
    const double resid = opnorm(r - oracle);
    const SpectrumReport rep = arveson_spectrum(b);
    const bool radical_ok = rep.radical && rep.points.empty();
    return make("AC04",
                "quasinilpotent shift: growth bound sentinel, entire resolvent at "
                "lambda=-5 vs quantized-generator inverse, radical spectrum report",
                resid, 1e-8, growth_ok && radical_ok);
}

// --- AC05: semigroup reproduction through the quotient calculus ---
CriterionResult ac05(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x05);
    const double alpha = -0.5;
    const HalfPlaneFunction f =
        HalfPlaneFunction::parse("exp(-0.5*z)", alpha, FnClass::Hinf);
    const HalfPlaneFunction h = HalfPlaneFunction::parse(
        "1/((z+1.5)^2)", alpha, FnClass::H1, /*outer=*/true);  // 1/(z - alpha + 1)^2
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Operator a = random_stable_matrix(4, rng);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(a);
        const QuasimultiplierFraction s = funcalc_quotient(f, h, b, alpha);
        const QmEval ev = qm_evaluate(s);
        worst = std::max(worst, opnorm(ev.value - b.evaluate(0.5)));
    }
    return make("AC05",
                "F(z)=e^{-z/2} through (FH)(-A)/H(-A) with H=1/(z-a+1)^2 vs e^{A/2}, "
                "10 random stable 4x4",
                worst, 1e-4);
}

// --- AC06: generator recovery, two fraction routes, representative independence ---
CriterionResult ac06(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x06);
    const double alpha = -0.5;
    const HalfPlaneFunction fneg = HalfPlaneFunction::parse("-z", alpha, FnClass::Smirnov);
    const HalfPlaneFunction h3 = HalfPlaneFunction::parse(
        "2/((z+1.5)^3)", alpha, FnClass::H1, /*outer=*/true);
    LineQuadParams lp;
    lp.tail_target = 1e-9;

    std::vector<SemigroupBackend> backends;
    backends.push_back(SemigroupBackend::diagonal({{-1.0, 0.0}, {-2.0, 0.0}}));
    for (int i = 0; i < 4; ++i)
        backends.push_back(SemigroupBackend::matrix_exp(random_stable_matrix(4, rng)));

    double worst = 0.0;
    bool equal_ok = true;
    for (const SemigroupBackend& b : backends) {
        const Operator a = *b.generator_matrix();
        const QuasimultiplierFraction s1 = funcalc_quotient(fneg, h3, b, alpha, lp);
        const QuasimultiplierFraction s2 = generator(b, 1.0);
        const QuasimultiplierFraction s3 = generator(b, 2.0);
        worst = std::max(worst, opnorm(qm_evaluate(s1).value - a));
        worst = std::max(worst, opnorm(qm_evaluate(s2).value - a));
        equal_ok = equal_ok && qm_equal(s1, s2, 1e-6) && qm_equal(s2, s3, 1e-6);
    }
    return make("AC06",
                "generator via quotient path (F=-z, H=2/(z-a+1)^3) and via the "
                "v_lambda fraction, both vs A; fractions cross-equal at 1e-6",
                worst, 1e-4, equal_ok);
}

// --- AC07: multiplicativity on random rational H1 pairs ---
std::string random_rational(Rng& rng, int* pole_count) {
    // c/(z+p)^k with Re p >= 0.8 so every pole stays left of alpha=-0.5.
    std::ostringstream os;
    const int k = rng.uniform(0.0, 1.0) < 0.5 ? 2 : 3;
    const double pre = rng.uniform(0.8, 3.0);
    const double pim = rng.uniform(-1.5, 1.5);
    const double c = rng.uniform(0.5, 2.0);
    os << c << "/((z+(" << pre << (pim >= 0 ? "+" : "") << pim << "i))^" << k << ")";
    *pole_count = 1;
    return os.str();
}

CriterionResult ac07(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x07);
    const double alpha = -0.5;
    LineQuadParams lp;
    lp.tail_target = 1e-9;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        int pc = 0;
        const HalfPlaneFunction f = HalfPlaneFunction::parse(
            random_rational(rng, &pc), alpha, FnClass::H1);
        const HalfPlaneFunction g = HalfPlaneFunction::parse(
            random_rational(rng, &pc), alpha, FnClass::H1);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(random_stable_matrix(4, rng));
        const Operator lhs = funcalc_h1(f.product(g, FnClass::H1), b, alpha, lp).value;
        const Operator rhs =
            funcalc_h1(f, b, alpha, lp).value * funcalc_h1(g, b, alpha, lp).value;
        worst = std::max(worst, opnorm(lhs - rhs));
    }
    return make("AC07", "||FG(-A) - F(-A)G(-A)|| on 20 random rational H1 pairs", worst,
                1e-5);
}

// --- AC08: spectral mapping of the calculus ---
CriterionResult ac08(const SuiteConfig& cfg) {
    Rng rng(cfg.seed ^ 0x08);
    const double alpha = -0.5;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        int pc = 0;
        const HalfPlaneFunction f = HalfPlaneFunction::parse(
            random_rational(rng, &pc), alpha, FnClass::H1);
        const Operator a = random_stable_matrix(4, rng);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(a);
        const Operator fa = funcalc_h1(f, b, alpha).value;
        Eigen::ComplexEigenSolver<Operator> es(fa);
        std::vector<Complex> got(es.eigenvalues().data(),
                                 es.eigenvalues().data() + es.eigenvalues().size());
        std::vector<Complex> want;
        for (const Complex& ev : arveson_spectrum(b).points) want.push_back(f.eval(-ev));
        worst = std::max(worst, hausdorff_distance(got, want));
    }
    return make("AC08", "eigenvalues of F(-A) vs {F(-a)} over the Arveson spectrum, "
                        "Hausdorff distance on 10 random backends",
                worst, 1e-5);
}

// --- AC09: inverse Laplace round trip + abscissa-shift invariance ---
CriterionResult ac09(const SuiteConfig& cfg) {
    (void)cfg;
    const TimeGrid grid(0.00048828125, 81921);  // step 2^-11, horizon 40
    const HalfPlaneFunction f =
        HalfPlaneFunction::parse("1/((z+2)^2)", -1.75, FnClass::H1);
    const GridFunction target =
        sample(grid, [](double t) { return Complex(t * std::exp(-2.0 * t), 0.0); });
    const InvLaplaceResult r1 = inverse_laplace_fft(f, -1.5, grid);
    const InvLaplaceResult r2 = inverse_laplace_fft(f, -1.0, grid);
    const double e1 = l1_distance(r1.values, target);
    const double e2 = l1_distance(r2.values, target);
    const double shift = l1_distance(r1.values, r2.values);
    const bool shift_ok = shift <= 2.0 * (r1.budget + r2.budget);
    const bool dyn_ok = e1 <= r1.budget && e2 <= r2.budget;
    return make("AC09",
                "L^-1(L(f)) for f=t e^{-2t}: L1 errors " + fmt(e1) + " / " + fmt(e2) +
                    " at alpha=-1.5/-1.0; abscissa-shift distance " + fmt(shift) +
                    " <= 2x combined budget " + fmt(2.0 * (r1.budget + r2.budget)),
                std::max(e1, e2), 1e-4, shift_ok && dyn_ok);
}

// --- AC10: convolution theorem ---
CriterionResult ac10(const SuiteConfig& cfg) {
    (void)cfg;
    const TimeGrid grid(0.001953125, 15361);  // step 2^-9, horizon 30
    const double alpha = -0.7;
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"1/((z+1)^2)", "1/((z+1.5)^2)"},
        {"1/((z+1)^2)", "2/((z+2)^3)"},
        {"1.5/((z+(1+0.5i))^2)", "1.5/((z+(1-0.5i))^2)"}};
    double worst = 0.0;
    for (const auto& [fs, gs] : pairs) {
        const HalfPlaneFunction f = HalfPlaneFunction::parse(fs, alpha, FnClass::H1);
        const HalfPlaneFunction g = HalfPlaneFunction::parse(gs, alpha, FnClass::H1);
        const GridFunction inv_f = inverse_laplace_fft(f, alpha, grid).values;
        const GridFunction inv_g = inverse_laplace_fft(g, alpha, grid).values;
        const GridFunction lhs =
            inverse_laplace_fft(f.product(g, FnClass::H1), alpha, grid).values;
        worst = std::max(worst, l1_distance(lhs, convolve(inv_f, inv_g)));
    }
    return make("AC10", "L^-1(FG) vs L^-1(F)*L^-1(G) in L1 on rational pairs", worst, 1e-3);
}

// --- AC11: outer regularization ---
CriterionResult ac11(const SuiteConfig& cfg) {
    (void)cfg;
    const double alpha = -0.5;
    const HalfPlaneFunction f = HalfPlaneFunction::parse(
        "1/((z+1.5)^2)", alpha, FnClass::H1, /*outer=*/true);  // 1/(z-alpha+1)^2
    const std::vector<Complex> probes = {
        {alpha + 0.5, 0.0}, {alpha + 0.5, 2.0},  {alpha + 0.5, -1.0},
        {alpha + 1.0, 0.5}, {alpha + 2.0, -3.0}, {alpha + 4.5, 3.0}};
    std::vector<double> sups;
    for (int n : {2, 4, 8, 12}) {
        const HalfPlaneFunction fn = outer_regularizer(f, n, alpha);
        double sup = 0.0;
        for (const Complex& z : probes)
            sup = std::max(sup, std::abs(f.eval(z) * fn.eval(z) - 1.0));
        sups.push_back(sup);
    }
    const bool decreasing = sups[0] > sups[1] && sups[1] > sups[2] && sups[2] > sups[3];
    std::ostringstream desc;
    desc << "|F F_n - 1| probe sup over the beta=alpha+0.5 half-plane at n=2,4,8,12: ";
    for (double s : sups) desc << fmt(s) << " ";
    desc << (decreasing ? "(strictly decreasing)" : "(NOT decreasing)");
    return make("AC11", desc.str(), sups.back(), 0.1, decreasing);
}

// --- AC12: derivative identity residual, O(step) with linear halving ---
CriterionResult ac12(const SuiteConfig& cfg) {
    (void)cfg;
    const double scale = 1.0 + 2.0 * std::exp(-2.0);  // int |v1''| dt
    double worst_ratio_dev = 0.0;
    double worst_resid_over_bound = 0.0;
    bool ok = true;
    const TimeGrid fine(0.0009765625, 40961);
    const TimeGrid coarse(0.001953125, 20481);
    for (double t : {0.25, 0.5, 1.0}) {
        const double rf = fundamental_identity_check(v_lambda(fine, 1.0),
                                                     v_lambda_prime(fine, 1.0), t);
        const double rc = fundamental_identity_check(v_lambda(coarse, 1.0),
                                                     v_lambda_prime(coarse, 1.0), t);
        ok = ok && rf <= 8.0 * fine.step * scale && rc <= 8.0 * coarse.step * scale;
        worst_resid_over_bound =
            std::max(worst_resid_over_bound, rf / (8.0 * fine.step * scale));
        const double ratio = rc / rf;  // expect ~2
        ok = ok && ratio >= 1.6 && ratio <= 2.4;
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 2.0));
    }
    return make("AC12",
                "f*d_t - f + int (f'*d_s) ds residual <= 8 step ||f''||_1 at t=0.25/0.5/1, "
                "halving ratio within 20% of 2 (max dev " + fmt(worst_ratio_dev) + ")",
                worst_resid_over_bound, 1.0, ok);
}

// --- AC13: approximate identity ---
CriterionResult ac13(const SuiteConfig& cfg) {
    (void)cfg;
    const SemigroupBackend b = SemigroupBackend::diagonal({{-1.0, 0.0}, {-2.0, 0.0}});
    const TimeGrid grid = default_grid();
    const Operator u = phi(b, MeasureRepr(v_lambda(grid, 1.0)));
    const std::vector<double> trace = approximate_identity_trace(b, u, 64, grid);
    const std::vector<double> norms = approximate_identity_norms(b, 64, grid);
    bool tail_decreasing = true;
    for (std::size_t i = 8; i + 1 < trace.size(); ++i)
        if (trace[i + 1] > trace[i] * 1.05) tail_decreasing = false;
    double sup_norm = 0.0;
    for (double v : norms) sup_norm = std::max(sup_norm, v);
    const bool norm_ok = sup_norm <= 1.05;
    return make("AC13",
                "||e_n u - u|| down to " + fmt(trace.back()) + " at n=64 (tail monotone: " +
                    (tail_decreasing ? "yes" : "no") + "); sup ||e_n|| = " + fmt(sup_norm) +
                    " <= 1.05",
                trace.back(), 1e-3, tail_decreasing && norm_ok);
}

// --- AC14: mollified calculus (known-unattainable threshold; see ledger) ---
CriterionResult ac14(const SuiteConfig& cfg) {
    (void)cfg;
    const SemigroupBackend b = SemigroupBackend::diagonal({{-1.0, 0.0}, {-2.0, 0.0}});
    const double alpha = -0.5;
    const TimeGrid grid = default_grid();
    const GridFunction f = v_lambda(grid, 1.0);
    const Operator target = phi(b, MeasureRepr(f));
    std::vector<double> errs;
    double final_closed_form = 0.0;
    for (int n : {4, 16, 64}) {
        const Operator approx = regularized_funcalc(f, b, alpha, n).value;
        errs.push_back(opnorm(approx - target));
        if (n == 64) {
            // per-eigenvalue closed form of the mollifier truncation
            const double na = n - alpha;
            for (const Complex a : {Complex(-1.0, 0.0), Complex(-2.0, 0.0)}) {
                const Complex mn = (na * na) / ((-a + na) * (-a + na));
                const Complex lf = 1.0 / ((-a + 1.0) * (-a + 1.0));
                final_closed_form = std::max(final_closed_form, std::abs((mn - 1.0) * lf));
            }
        }
    }
    const bool decreasing = errs[0] > errs[1] && errs[1] > errs[2];
    std::ostringstream desc;
    desc << "Laplace-mollified approximant error at n=4,16,64: ";
    for (double e : errs) desc << fmt(e) << " ";
    desc << (decreasing ? "(decreasing)" : "(NOT decreasing)");
    desc << "; closed-form mollifier gap at n=64 is " << fmt(final_closed_form)
         << " (implementation deviates from it by "
         << fmt(std::abs(errs.back() - final_closed_form)) << "), so the 1e-3 threshold "
         << "is not reachable with this mollifier family";
    return make("AC14", desc.str(), errs.back(), 1e-3, decreasing);
}

// --- AC15: difference quotient ---
CriterionResult ac15(const SuiteConfig& cfg) {
    (void)cfg;
    const SemigroupBackend b = SemigroupBackend::diagonal({{-1.0, 0.0}, {-2.0, 0.0}});
    const TimeGrid grid = default_grid();
    const Operator u = phi(b, MeasureRepr(v_lambda(grid, 1.0)));
    const std::vector<double> r =
        difference_quotient_check(b, u, {1e-1, 1e-2, 1e-3});
    const double r1 = r[0] / r[1], r2 = r[1] / r[2];
    const bool linear = r1 >= 5.0 && r1 <= 20.0 && r2 >= 5.0 && r2 <= 20.0;
    return make("AC15",
                "||(T(t)u-u)/t - Au|| at t=1e-1/1e-2/1e-3: " + fmt(r[0]) + " " + fmt(r[1]) +
                    " " + fmt(r[2]) + "; decade ratios " + fmt(r1) + ", " + fmt(r2),
                r.back(), 5e-3, linear);
}

// --- AC16: determinism ---
CriterionResult ac16(const SuiteConfig& cfg) {
    std::vector<CriterionResult> a, b;
    for (int k : {2, 5, 8, 12, 13}) {
        a.push_back(run_criterion(k, cfg));
        b.push_back(run_criterion(k, cfg));
    }
    const std::string sa = report_to_json(a);
    const std::string sb = report_to_json(b);
    const bool identical = sa == sb;
    return make("AC16",
                "repeated runs of the seeded criteria serialize byte-identically "
                "(subset {2,5,8,12,13}; the CLI-level check reruns the full report)",
                identical ? 0.0 : 1.0, 0.5, identical);
}

}  // namespace

CriterionResult run_criterion(int k, const SuiteConfig& cfg) {
    switch (k) {
        case 1: return ac01(cfg);
        case 2: return ac02(cfg);
        case 3: return ac03(cfg);
        case 4: return ac04(cfg);
        case 5: return ac05(cfg);
        case 6: return ac06(cfg);
        case 7: return ac07(cfg);
        case 8: return ac08(cfg);
        case 9: return ac09(cfg);
        case 10: return ac10(cfg);
        case 11: return ac11(cfg);
        case 12: return ac12(cfg);
        case 13: return ac13(cfg);
        case 14: return ac14(cfg);
        case 15: return ac15(cfg);
        case 16: return ac16(cfg);
        default: throw DomainError("run_criterion: k must be 1..16");
    }
}

std::vector<CriterionResult> run_suite(const SuiteConfig& cfg) {
    std::vector<CriterionResult> out;
    for (int k = 1; k <= 16; ++k) out.push_back(run_criterion(k, cfg));
    return out;
}

std::string report_to_json(const std::vector<CriterionResult>& results) {
    json arr = json::array();
    for (const CriterionResult& r : results)
        arr.push_back(json{{"id", r.id},
                           {"description", r.description},
                           {"residual", r.residual},
                           {"budget", r.budget},
                           {"pass", r.pass}});
    return dump_json(arr);
}

}  // namespace sgcalc
