#ifndef SGCALC_GRID_FUNCTION_HPP
#define SGCALC_GRID_FUNCTION_HPP

#include <complex>
#include <functional>
#include <vector>

#include "sgcalc/time_grid.hpp"

namespace sgcalc {

using Complex = std::complex<double>;

// Sampled element of the weighted L1 convolution algebra.
struct GridFunction {
    TimeGrid grid;
    std::vector<Complex> values;

    GridFunction() = default;
    GridFunction(TimeGrid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
        if (static_cast<std::int64_t>(values.size()) != grid.count)
            throw DomainError("GridFunction: values size must equal grid count");
    }
};

GridFunction sample(const TimeGrid& grid, const std::function<Complex(double)>& f);
GridFunction zero_function(const TimeGrid& grid);

// v_lambda(t) = t e^{-lambda t} and its derivative (1 - lambda t) e^{-lambda t}.
GridFunction v_lambda(const TimeGrid& grid, double lambda);
GridFunction v_lambda_prime(const TimeGrid& grid, double lambda);

// Trapezoid integral of f (resp. |f|) over the grid.
Complex trapezoid_integral(const GridFunction& f);
double l1_norm(const GridFunction& f);
double l1_distance(const GridFunction& f, const GridFunction& g);

}  // namespace sgcalc

#endif
