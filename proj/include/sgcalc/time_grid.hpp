#ifndef SGCALC_TIME_GRID_HPP
#define SGCALC_TIME_GRID_HPP

#include <cstdint>
#include <cmath>

#include "sgcalc/errors.hpp"

namespace sgcalc {

// Uniform grid on [0, step*(count-1)]; node k sits at t = k*step.
struct TimeGrid {
    double step = 0.0;
    std::int64_t count = 0;

    TimeGrid() = default;
    TimeGrid(double step_, std::int64_t count_) : step(step_), count(count_) {
        if (!(step > 0.0) || !std::isfinite(step))
            throw DomainError("TimeGrid: step must be positive and finite");
        if (count < 2) throw DomainError("TimeGrid: count must be >= 2");
        if (!std::isfinite(horizon())) throw DomainError("TimeGrid: horizon not finite");
    }

    double t(std::int64_t k) const { return static_cast<double>(k) * step; }
    double horizon() const { return static_cast<double>(count - 1) * step; }

    bool operator==(const TimeGrid& o) const { return step == o.step && count == o.count; }
};

// step = 2^-10, horizon = 40 time units.
inline TimeGrid default_grid() { return TimeGrid(0.0009765625, 40961); }

inline TimeGrid make_grid(double step, double horizon) {
    return TimeGrid(step, static_cast<std::int64_t>(std::llround(horizon / step)) + 1);
}

}  // namespace sgcalc

#endif
