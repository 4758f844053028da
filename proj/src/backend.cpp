#include "sgcalc/backend.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <limits>

#include "sgcalc/exec.hpp"

namespace sgcalc {

SemigroupBackend SemigroupBackend::matrix_exp(Operator a) {
    if (a.rows() == 0 || a.rows() != a.cols())
        throw DomainError("matrix_exp backend: square nonempty matrix required");
    if (!a.allFinite()) throw DomainError("matrix_exp backend: entries must be finite");
    SemigroupBackend b;
    b.kind_ = Kind::matrix_exp;
    b.dim_ = static_cast<int>(a.rows());
    b.a_ = std::move(a);
    b.eig_ = std::make_shared<EigenDecomposition>(eigendecompose(b.a_));
    return b;
}

SemigroupBackend SemigroupBackend::diagonal(std::vector<Complex> eigs) {
    if (eigs.empty()) throw DomainError("diagonal backend: at least one eigenvalue");
    SemigroupBackend b;
    b.kind_ = Kind::diagonal;
    b.dim_ = static_cast<int>(eigs.size());
    b.eigs_ = std::move(eigs);
    auto d = std::make_shared<EigenDecomposition>();
    d->vectors = Operator::Identity(b.dim_, b.dim_);
    d->vectors_inv = d->vectors;
    d->values = Eigen::Map<const Eigen::VectorXcd>(b.eigs_.data(), b.dim_);
    d->condition = 1.0;
    b.eig_ = std::move(d);
    return b;
}

SemigroupBackend SemigroupBackend::nilpotent_shift(int dim, double unit) {
    if (dim < 1) throw DomainError("nilpotent_shift backend: dim must be >= 1");
    if (!(unit > 0.0)) throw DomainError("nilpotent_shift backend: unit must be > 0");
    SemigroupBackend b;
    b.kind_ = Kind::nilpotent_shift;
    b.dim_ = dim;
    b.unit_ = unit;
    return b;
}

namespace {
Operator shift_power(int dim, std::int64_t k) {
    Operator m = Operator::Zero(dim, dim);
    if (k >= dim) return m;
    for (int i = static_cast<int>(k); i < dim; ++i) m(i, i - static_cast<int>(k)) = 1.0;
    return m;
}
}  // namespace

Operator SemigroupBackend::evaluate(double t) const {
    if (t < 0.0) throw DomainError("evaluate: t must be >= 0");
    switch (kind_) {
        case Kind::matrix_exp: {
            if (t == 0.0) return Operator::Identity(dim_, dim_);
            Operator m = (t * a_).exp();
            return m;
        }
        case Kind::diagonal: {
            Operator m = Operator::Zero(dim_, dim_);
            for (int i = 0; i < dim_; ++i) m(i, i) = std::exp(t * eigs_[static_cast<std::size_t>(i)]);
            return m;
        }
        case Kind::nilpotent_shift: {
            const std::int64_t k = static_cast<std::int64_t>(std::floor(t / unit_ + 1e-12));
            return shift_power(dim_, k);
        }
    }
    throw DomainError("evaluate: unknown backend kind");
}

double SemigroupBackend::growth_bound() const {
    if (kind_ == Kind::nilpotent_shift) return -std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < eig_->values.size(); ++i) hi = std::max(hi, eig_->values(i).real());
    return hi;
}

std::optional<Operator> SemigroupBackend::generator_matrix() const {
    switch (kind_) {
        case Kind::matrix_exp: return a_;
        case Kind::diagonal: {
            Operator m = Operator::Zero(dim_, dim_);
            for (int i = 0; i < dim_; ++i) m(i, i) = eigs_[static_cast<std::size_t>(i)];
            return m;
        }
        case Kind::nilpotent_shift: return std::nullopt;
    }
    return std::nullopt;
}

const EigenDecomposition* SemigroupBackend::eigen_data() const { return eig_.get(); }

std::vector<Operator> SemigroupBackend::build_samples(const TimeGrid& grid) const {
    const std::size_t n = static_cast<std::size_t>(grid.count);
    std::vector<Operator> out(n);
    switch (kind_) {
        case Kind::diagonal: {
            exec::parallel_for(
                n,
                [&](std::size_t k) {
                    Operator m = Operator::Zero(dim_, dim_);
                    const double t = grid.t(static_cast<std::int64_t>(k));
                    for (int i = 0; i < dim_; ++i)
                        m(i, i) = std::exp(t * eigs_[static_cast<std::size_t>(i)]);
                    out[k] = std::move(m);
                },
                exec::default_mode());
            break;
        }
        case Kind::nilpotent_shift: {
            exec::parallel_for(
                n,
                [&](std::size_t k) {
                    const double t = grid.t(static_cast<std::int64_t>(k));
                    out[k] = shift_power(
                        dim_, static_cast<std::int64_t>(std::floor(t / unit_ + 1e-12)));
                },
                exec::default_mode());
            break;
        }
        case Kind::matrix_exp: {
            // T(k step) = E^k with E = e^{step A}. Chunk starts come from binary
            // powering so chunks are independent (and the result does not depend
            // on the thread count); within a chunk we multiply incrementally.
            const Operator e = (grid.step * a_).exp();
            const std::size_t chunk = exec::chunk_size;
            const std::size_t nchunks = (n + chunk - 1) / chunk;
            std::vector<Operator> start(nchunks);
            Operator echunk = Operator::Identity(dim_, dim_);
            {
                // E^chunk by binary powering.
                Operator base = e;
                std::size_t p = chunk;
                while (p > 0) {
                    if (p & 1) echunk = echunk * base;
                    base = base * base;
                    p >>= 1;
                }
            }
            start[0] = Operator::Identity(dim_, dim_);
            for (std::size_t c = 1; c < nchunks; ++c) start[c] = start[c - 1] * echunk;
            exec::parallel_for(
                nchunks,
                [&](std::size_t c) {
                    Operator cur = start[c];
                    const std::size_t lo = c * chunk;
                    const std::size_t hi = std::min(n, lo + chunk);
                    for (std::size_t k = lo; k < hi; ++k) {
                        out[k] = cur;
                        if (k + 1 < hi) cur = cur * e;
                    }
                },
                exec::default_mode());
            break;
        }
    }
    return out;
}

std::shared_ptr<const std::vector<Operator>> SemigroupBackend::samples(
    const TimeGrid& grid) const {
    const auto key = std::make_pair(grid.step, grid.count);
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->entries.find(key);
        if (it != cache_->entries.end()) return it->second;
    }
    auto built = std::make_shared<const std::vector<Operator>>(build_samples(grid));
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->entries.emplace(key, built).first->second;
}

double lambda_norm(const SemigroupBackend& b, const Operator& u, double lambda,
                   const TimeGrid& sample_grid) {
    if (u.rows() != b.dim() || u.cols() != b.dim())
        throw DomainError("lambda_norm: dimension mismatch");
    if (!(lambda > b.growth_bound()))
        throw DomainError("lambda_norm: lambda must exceed the growth bound");
    auto ts = b.samples(sample_grid);
    const std::size_t n = ts->size();
    std::vector<double> vals(n);
    exec::parallel_for(
        n,
        [&](std::size_t k) {
            const double s = sample_grid.t(static_cast<std::int64_t>(k));
            vals[k] = std::exp(-lambda * s) * opnorm((*ts)[k] * u);
        },
        exec::default_mode());
    double sup = 0.0;
    for (double v : vals) sup = std::max(sup, v);
    if (sup > 0.0 && vals[n - 1] > vals[n - 2] && vals[n - 1] > 1e-14 * sup)
        throw DomainError("lambda_norm: damped envelope still increasing at the horizon");
    return sup;
}

Weight weight_from_backend(const SemigroupBackend& b, const TimeGrid& grid, double floor) {
    auto ts = b.samples(grid);
    std::vector<double> v(ts->size());
    exec::parallel_for(
        ts->size(), [&](std::size_t k) { v[k] = std::max(opnorm((*ts)[k]), floor); },
        exec::default_mode());
    return Weight(grid, std::move(v));
}

}  // namespace sgcalc
