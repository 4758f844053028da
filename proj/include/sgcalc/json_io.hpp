#ifndef SGCALC_JSON_IO_HPP
#define SGCALC_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "sgcalc/grid_function.hpp"
#include "sgcalc/measure.hpp"
#include "sgcalc/operator_utils.hpp"
#include "sgcalc/weight.hpp"

namespace sgcalc {

using json = nlohmann::ordered_json;

// {step, values: [[re,im], ...]}
json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const json& j);

json weight_to_json(const Weight& w);

// [{t, re, im}, ...]
json atoms_to_json(const std::vector<MeasureRepr::Atom>& atoms);
std::vector<MeasureRepr::Atom> atoms_from_json(const json& j);

// {dim, entries: [[re,im], ...] row-major}
json operator_to_json(const Operator& m);
Operator operator_from_json(const json& j);

// Serialization with fixed %.17g float formatting (byte-stable outputs).
std::string dump_json(const json& j, int indent = 2);
std::string format_double(double x);

}  // namespace sgcalc

#endif
