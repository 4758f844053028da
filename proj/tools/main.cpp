#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sgcalc/algebra.hpp"
#include "sgcalc/funcalc.hpp"
#include "sgcalc/json_io.hpp"
#include "sgcalc/resolvent.hpp"
#include "sgcalc/suite.hpp"

namespace {

using namespace sgcalc;

// command-line complex numbers: "re", "re+imi", "re-imi", e.g. -5+0i, 1.5-2i
Complex parse_complex_arg(const std::string& s) {
    const auto fail = [&]() -> Complex {
        throw DomainError("cannot parse complex number '" + s + "' (expected re+imi)");
    };
    if (s.empty()) return fail();
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    try {
        if (s.back() == 'i') {
            if (split == std::string::npos) {  // pure imaginary: "2i", "-0.5i"
                const std::string im = s.substr(0, s.size() - 1);
                return Complex(0.0, im.empty() || im == "+" || im == "-"
                                        ? (im == "-" ? -1.0 : 1.0)
                                        : std::stod(im));
            }
            const std::string re = s.substr(0, split);
            std::string im = s.substr(split, s.size() - split - 1);
            if (im == "+") im = "1";
            if (im == "-") im = "-1";
            return Complex(std::stod(re), std::stod(im));
        }
        return Complex(std::stod(s), 0.0);
    } catch (const std::exception&) {
        return fail();
    }
}

SemigroupBackend parse_backend_arg(const std::string& spec) {
    if (spec.rfind("diag:", 0) == 0) {
        std::vector<Complex> eigs;
        std::string body = spec.substr(5);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t comma = body.find(',', pos);
            const std::string tok =
                body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw DomainError("diag backend: empty eigenvalue token");
            eigs.push_back(parse_complex_arg(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return SemigroupBackend::diagonal(std::move(eigs));
    }
    if (spec.rfind("mat:", 0) == 0) {
        const std::string path = spec.substr(4);
        std::ifstream in(path);
        if (!in) throw DomainError("cannot read matrix file '" + path + "'");
        json j;
        in >> j;
        return SemigroupBackend::matrix_exp(operator_from_json(j));
    }
    if (spec.rfind("nilshift:", 0) == 0) {
        const std::string body = spec.substr(9);
        const std::size_t colon = body.find(':');
        if (colon == std::string::npos)
            throw DomainError("nilshift backend: expected nilshift:DIM:UNIT");
        const int dim = std::stoi(body.substr(0, colon));
        const double unit = std::stod(body.substr(colon + 1));
        return SemigroupBackend::nilpotent_shift(dim, unit);
    }
    throw DomainError("unknown backend spec '" + spec +
                      "' (expected diag:..., mat:FILE.json, nilshift:DIM:UNIT)");
}

void emit(const std::string& path, const json& j) {
    const std::string text = dump_json(j);
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write output file '" + path + "'");
    out << text;
}

json result_payload(const Operator& value, double budget, json meta) {
    return json{{"result", operator_to_json(value)}, {"budget", budget},
                {"meta", std::move(meta)}};
}

int run(int argc, char** argv) {
    CLI::App app{"semigroup calculus toolbox: resolvents, Arveson spectra, holomorphic "
                 "functional calculus on matrix semigroup backends"};
    app.require_subcommand(1);

    std::string backend_spec, out_path, expr_text, lambda_text;
    double alpha = 0.0;
    double gen_lambda = 1.0;
    std::uint64_t seed = 42;
    double step = 0.0009765625;
    double horizon = 40.0;

    auto* c_res = app.add_subcommand("resolvent", "(lambda I - A)^{-1} by Laplace quadrature");
    c_res->add_option("--backend", backend_spec)->required();
    c_res->add_option("--lambda", lambda_text)->required();
    c_res->add_option("--out", out_path);

    auto* c_spec = app.add_subcommand("spectrum", "Arveson spectrum report");
    c_spec->add_option("--backend", backend_spec)->required();
    c_spec->add_option("--out", out_path);

    auto* c_fun = app.add_subcommand("funcalc", "F(-A) via the quotient calculus");
    c_fun->add_option("--backend", backend_spec)->required();
    c_fun->add_option("--expr", expr_text)->required();
    c_fun->add_option("--alpha", alpha)->required();
    c_fun->add_option("--out", out_path);

    auto* c_gen = app.add_subcommand("generator", "A as the -phi(v_l')/phi(v_l) fraction");
    c_gen->add_option("--backend", backend_spec)->required();
    c_gen->add_option("--lambda", gen_lambda);
    c_gen->add_option("--out", out_path);

    auto* c_inv = app.add_subcommand("invlaplace", "inverse Laplace transform to a time grid");
    c_inv->add_option("--expr", expr_text)->required();
    c_inv->add_option("--alpha", alpha)->required();
    c_inv->add_option("--step", step);
    c_inv->add_option("--horizon", horizon);
    c_inv->add_option("--out", out_path);

    auto* c_ver = app.add_subcommand("verify", "run the acceptance criteria battery");
    c_ver->add_option("--seed", seed);
    c_ver->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*c_res) {
            const SemigroupBackend b = parse_backend_arg(backend_spec);
            const Complex lam = parse_complex_arg(lambda_text);
            const ResolventResult r = resolvent_laplace(b, lam);
            emit(out_path, result_payload(r.value, r.budget,
                                          json{{"op", "resolvent"},
                                               {"lambda", lambda_text},
                                               {"growth_bound", b.growth_bound()}}));
        } else if (*c_spec) {
            const SemigroupBackend b = parse_backend_arg(backend_spec);
            const SpectrumReport rep = arveson_spectrum(b);
            json pts = json::array();
            for (const Complex& p : rep.points) pts.push_back(json::array({p.real(), p.imag()}));
            emit(out_path, json{{"points", std::move(pts)}, {"radical", rep.radical}});
        } else if (*c_fun) {
            const SemigroupBackend b = parse_backend_arg(backend_spec);
            const HalfPlaneFunction f =
                HalfPlaneFunction::parse(expr_text, alpha, FnClass::Hinf);
            // paper-endorsed default denominator witness 1/(z - alpha + 1)^2
            const HalfPlaneFunction h = HalfPlaneFunction::from_callable(
                [alpha](Complex z) {
                    const Complex w = z - alpha + 1.0;
                    return 1.0 / (w * w);
                },
                alpha, FnClass::H1, "1/(z-alpha+1)^2", /*outer=*/true);
            const QuasimultiplierFraction s = funcalc_quotient(f, h, b, alpha);
            const QmEval ev = qm_evaluate(s);
            if (ev.status != QmEval::Status::ok) throw DomainError("funcalc: " + ev.message);
            const double budget =
                (s.num_budget + opnorm(ev.value) * s.den_budget) * ev.den_inv_norm;
            emit(out_path,
                 result_payload(ev.value, budget,
                                json{{"op", "funcalc"},
                                     {"expr", expr_text},
                                     {"alpha", alpha},
                                     {"denominator", "1/(z-alpha+1)^2"},
                                     {"condition", ev.condition},
                                     {"solve_residual", ev.residual}}));
        } else if (*c_gen) {
            const SemigroupBackend b = parse_backend_arg(backend_spec);
            const QuasimultiplierFraction s = generator(b, gen_lambda);
            const QmEval ev = qm_evaluate(s);
            if (ev.status != QmEval::Status::ok) throw DomainError("generator: " + ev.message);
            const double budget =
                (s.num_budget + opnorm(ev.value) * s.den_budget) * ev.den_inv_norm;
            emit(out_path,
                 result_payload(ev.value, budget,
                                json{{"op", "generator"},
                                     {"lambda", gen_lambda},
                                     {"condition", ev.condition},
                                     {"solve_residual", ev.residual}}));
        } else if (*c_inv) {
            const HalfPlaneFunction f =
                HalfPlaneFunction::parse(expr_text, alpha, FnClass::H1);
            const TimeGrid grid = make_grid(step, horizon);
            const InvLaplaceResult r = inverse_laplace_fft(f, alpha, grid);
            json payload = grid_function_to_json(r.values);
            payload["meta"] = json{{"op", "invlaplace"},
                                   {"expr", expr_text},
                                   {"alpha", alpha},
                                   {"budget", r.budget},
                                   {"leakage_mass", r.leakage_mass},
                                   {"beyond_horizon_mass", r.beyond_horizon_mass},
                                   {"imag_residual", r.imag_residual}};
            emit(out_path, payload);
        } else if (*c_ver) {
            const std::vector<CriterionResult> results = run_suite(SuiteConfig{seed});
            const std::string text = report_to_json(results);
            if (out_path.empty() || out_path == "-") {
                std::cout << text;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw DomainError("cannot write output file '" + out_path + "'");
                out << text;
            }
            // failures are report entries, not command errors
            for (const CriterionResult& r : results)
                std::cerr << r.id << (r.pass ? " PASS " : " FAIL ") << "residual="
                          << format_double(r.residual) << " budget=" << format_double(r.budget)
                          << "\n";
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
