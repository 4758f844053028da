// Serial vs OpenMP timings for the three hot kernels: grid convolution,
// operator-valued quadrature (phi), and the vertical-line calculus integral.

#include <chrono>
#include <cstdio>

#include "sgcalc/algebra.hpp"
#include "sgcalc/funcalc.hpp"
#include "sgcalc/pettis.hpp"

using namespace sgcalc;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        const TimeGrid grid(0.0009765625, 24577);  // horizon 24
        const GridFunction f = v_lambda(grid, 1.0);
        const GridFunction g = v_lambda(grid, 1.5);
        const double ts =
            time_best_of(2, [&] { (void)convolve(f, g, exec::Mode::serial); });
        const double tp =
            time_best_of(2, [&] { (void)convolve(f, g, exec::Mode::parallel); });
        row("convolve (24k nodes)", ts, tp);
    }

    {
        Rng rng(7);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(random_stable_matrix(6, rng));
        const TimeGrid grid = default_grid();
        const MeasureRepr mu{v_lambda(grid, 1.0)};
        (void)b.samples(grid);  // cache warmup outside the timed region
        const double ts = time_best_of(3, [&] { (void)phi(b, mu, exec::Mode::serial); });
        const double tp = time_best_of(3, [&] { (void)phi(b, mu, exec::Mode::parallel); });
        row("phi quadrature (41k nodes)", ts, tp);
    }

    {
        Rng rng(11);
        const SemigroupBackend b = SemigroupBackend::matrix_exp(random_stable_matrix(6, rng));
        const HalfPlaneFunction f = HalfPlaneFunction::parse("1/((z+1)^2)", -0.5, FnClass::H1);
        LineQuadParams lp;
        lp.tail_target = 1e-9;
        auto run = [&](exec::Mode m) {
            exec::set_default_mode(m);
            (void)funcalc_h1(f, b, -0.5, lp);
        };
        const double ts = time_best_of(2, [&] { run(exec::Mode::serial); });
        const double tp = time_best_of(2, [&] { run(exec::Mode::parallel); });
        exec::set_default_mode(exec::Mode::parallel);
        row("funcalc line integral", ts, tp);
    }

    return 0;
}
