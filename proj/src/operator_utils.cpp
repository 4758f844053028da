#include "sgcalc/operator_utils.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "sgcalc/errors.hpp"

namespace sgcalc {

double opnorm(const Operator& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Operator> svd(m);
    return svd.singularValues()(0);
}

double hausdorff_distance(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    auto one_sided = [&](const auto& from, const auto& to) {
        for (const auto& x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& y : to) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
    };
    one_sided(a, b);
    one_sided(b, a);
    return worst;
}

std::uint64_t Rng::next_u64() {
    // splitmix64; portable and stable across standard libraries.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::complex<double> Rng::uniform_complex(double re_lo, double re_hi, double im_lo,
                                          double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return {re, im};
}

Operator random_stable_matrix(int dim, Rng& rng, double abscissa_hi) {
    Eigen::VectorXcd eigs(dim);
    for (int i = 0; i < dim; ++i)
        eigs(i) = rng.uniform_complex(abscissa_hi - 2.5, abscissa_hi, -2.0, 2.0);
    Operator g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.uniform_complex(-1.0, 1.0, -1.0, 1.0);
    Operator v = Operator::Identity(dim, dim) + 0.35 * g;
    return v * eigs.asDiagonal() * v.partialPivLu().inverse();
}

EigenDecomposition eigendecompose(const Operator& a) {
    Eigen::ComplexEigenSolver<Operator> es(a);
    if (es.info() != Eigen::Success) throw DomainError("eigendecompose: solver failed");
    EigenDecomposition d;
    d.vectors = es.eigenvectors();
    d.values = es.eigenvalues();
    Eigen::JacobiSVD<Operator> svd(d.vectors);
    const double smin = svd.singularValues()(d.vectors.cols() - 1);
    const double smax = svd.singularValues()(0);
    d.condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
    d.vectors_inv = d.vectors.partialPivLu().inverse();
    return d;
}

}  // namespace sgcalc
