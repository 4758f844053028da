#ifndef SGCALC_MEASURE_HPP
#define SGCALC_MEASURE_HPP

#include <optional>
#include <vector>

#include "sgcalc/grid_function.hpp"
#include "sgcalc/weight.hpp"

namespace sgcalc {

// Absolutely continuous part sampled on a grid plus finitely many point masses.
struct MeasureRepr {
    struct Atom {
        double t = 0.0;  // location, >= 0
        Complex mass{0.0, 0.0};
    };

    std::optional<GridFunction> density;
    std::vector<Atom> atoms;

    MeasureRepr() = default;
    explicit MeasureRepr(GridFunction d) : density(std::move(d)) {}
    explicit MeasureRepr(std::vector<Atom> a);
    MeasureRepr(GridFunction d, std::vector<Atom> a);

    static MeasureRepr dirac(double t);
};

// integral of w d|mu| over density (trapezoid) and atoms (exact).
double weighted_total_variation(const MeasureRepr& mu, const Weight& w);

}  // namespace sgcalc

#endif
