#ifndef SGCALC_BACKEND_HPP
#define SGCALC_BACKEND_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "sgcalc/operator_utils.hpp"
#include "sgcalc/time_grid.hpp"
#include "sgcalc/weight.hpp"

namespace sgcalc {

// Concrete finite-dimensional realization of the semigroup t -> T(t).
// Immutable after construction; copies share the per-grid sample cache.
class SemigroupBackend {
public:
    enum class Kind { matrix_exp, diagonal, nilpotent_shift };

    SemigroupBackend() = default;  // empty placeholder; factories build real ones

    static SemigroupBackend matrix_exp(Operator a);
    static SemigroupBackend diagonal(std::vector<Complex> eigs);
    static SemigroupBackend nilpotent_shift(int dim, double unit);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    // T(t) for t >= 0; T(0) is the identity. matrix_exp evaluates e^{tA} by
    // scaling-and-squaring; diagonal entrywise; nilpotent_shift is the
    // subdiagonal shift to the power floor(t/unit) (zero once that reaches dim).
    Operator evaluate(double t) const;

    // log(rho) = lim ||T(t)||^{1/t}: spectral abscissa when a generator matrix
    // exists, -infinity sentinel for the quasinilpotent shift.
    double growth_bound() const;

    std::optional<Operator> generator_matrix() const;
    double nilshift_unit() const { return unit_; }

    // T sampled at every grid node; built once per (backend, grid) and shared.
    std::shared_ptr<const std::vector<Operator>> samples(const TimeGrid& grid) const;

    const EigenDecomposition* eigen_data() const;  // null for nilpotent_shift

private:
    Kind kind_ = Kind::diagonal;
    int dim_ = 0;
    Operator a_;                     // matrix_exp
    std::vector<Complex> eigs_;      // diagonal
    double unit_ = 0.0;              // nilpotent_shift
    std::shared_ptr<EigenDecomposition> eig_;

    struct Cache {
        std::mutex mu;
        std::map<std::pair<double, std::int64_t>,
                 std::shared_ptr<const std::vector<Operator>>>
            entries;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    std::vector<Operator> build_samples(const TimeGrid& grid) const;
};

// ||u||_lambda = sup over sampled s (including s=0) of e^{-lambda s} ||T(s) u||.
// Requires lambda > growth bound and a horizon on which the damped envelope
// has started to decrease.
double lambda_norm(const SemigroupBackend& b, const Operator& u, double lambda,
                   const TimeGrid& sample_grid);

// omega_T(t_k) = ||T(t_k)|| clamped away from zero (the shift backend vanishes).
Weight weight_from_backend(const SemigroupBackend& b, const TimeGrid& grid,
                           double floor = 1e-300);

}  // namespace sgcalc

#endif
