#include "sgcalc/json_io.hpp"

#include <cstdio>

namespace sgcalc {

json grid_function_to_json(const GridFunction& f) {
    json vals = json::array();
    for (const Complex& v : f.values) vals.push_back(json::array({v.real(), v.imag()}));
    return json{{"step", f.grid.step}, {"values", std::move(vals)}};
}

GridFunction grid_function_from_json(const json& j) {
    const double step = j.at("step").get<double>();
    std::vector<Complex> vals;
    for (const auto& p : j.at("values"))
        vals.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return GridFunction(TimeGrid(step, static_cast<std::int64_t>(vals.size())),
                        std::move(vals));
}

json weight_to_json(const Weight& w) {
    json vals = json::array();
    for (double v : w.values) vals.push_back(json::array({v, 0.0}));
    return json{{"step", w.grid.step}, {"values", std::move(vals)}};
}

json atoms_to_json(const std::vector<MeasureRepr::Atom>& atoms) {
    json arr = json::array();
    for (const auto& a : atoms)
        arr.push_back(json{{"t", a.t}, {"re", a.mass.real()}, {"im", a.mass.imag()}});
    return arr;
}

std::vector<MeasureRepr::Atom> atoms_from_json(const json& j) {
    std::vector<MeasureRepr::Atom> atoms;
    for (const auto& e : j)
        atoms.push_back({e.at("t").get<double>(),
                         Complex(e.at("re").get<double>(), e.at("im").get<double>())});
    return atoms;
}

json operator_to_json(const Operator& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j2 = 0; j2 < m.cols(); ++j2)
            entries.push_back(json::array({m(i, j2).real(), m(i, j2).imag()}));
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Operator operator_from_json(const json& j) {
    const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != dim * dim)
        throw DomainError("operator_from_json: entries size must be dim*dim");
    Operator m(dim, dim);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index c = 0; c < dim; ++c, ++k)
            m(i, c) = Complex(entries.at(k).at(0).get<double>(),
                              entries.at(k).at(1).get<double>());
    return m;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {
void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // arrays of primitives stay on one line; nested ones break per element
            bool flat = true;
            for (const auto& e : j)
                if (e.is_structured()) {
                    flat = false;
                    break;
                }
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += flat ? ", " : ",";
                if (!flat) {
                    out += "\n" + pad_in;
                }
                first = false;
                dump_rec(e, out, indent, depth + 1);
            }
            if (!flat) out += "\n" + pad;
            out += "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}
}  // namespace

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

}  // namespace sgcalc
