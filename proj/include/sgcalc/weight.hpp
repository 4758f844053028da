#ifndef SGCALC_WEIGHT_HPP
#define SGCALC_WEIGHT_HPP

#include <functional>
#include <vector>

#include "sgcalc/time_grid.hpp"

namespace sgcalc {

// Sampled submultiplicative weight; values strictly positive.
struct Weight {
    TimeGrid grid;
    std::vector<double> values;

    Weight() = default;
    Weight(TimeGrid g, std::vector<double> v);
};

Weight constant_weight(const TimeGrid& grid, double c = 1.0);
Weight exp_weight(const TimeGrid& grid, double lambda);  // e^{lambda t}
Weight sample_weight(const TimeGrid& grid, const std::function<double(double)>& w);

// omega_lambda(t) = e^{lambda t} sup_{s>=t} e^{-lambda s} w(s), computed by a
// backward running maximum over the grid. Rejects lambda for which the tail
// supremum is still climbing at the horizon (signals lambda <= log rho).
Weight regularized_weight(const Weight& w, double lambda);

// max over in-grid pairs (j,k), j+k < count, of w(t_j+t_k)/(w(t_j) w(t_k)) - 1.
// O(count^2); meant for test-sized grids.
double submultiplicativity_violation(const Weight& w);

}  // namespace sgcalc

#endif
