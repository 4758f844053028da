#ifndef SGCALC_OPERATOR_UTILS_HPP
#define SGCALC_OPERATOR_UTILS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace sgcalc {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

// Spectral (operator 2-) norm.
double opnorm(const Operator& m);

// Symmetrized Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<std::complex<double>>& a,
                          const std::vector<std::complex<double>>& b);

// Deterministic RNG utilities; raw-bit mapping so the stream does not depend
// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    double uniform(double lo, double hi);
    std::complex<double> uniform_complex(double re_lo, double re_hi, double im_lo, double im_hi);

private:
    std::uint64_t next_u64();
    std::uint64_t state_;
};

// Random diagonalizable matrix with spectral abscissa in [abscissa_hi-2.5, abscissa_hi]
// and mildly conditioned eigenvectors (condition << 100).
Operator random_stable_matrix(int dim, Rng& rng, double abscissa_hi = -0.5);

struct EigenDecomposition {
    Operator vectors;      // V
    Operator vectors_inv;  // V^{-1}
    Eigen::VectorXcd values;
    double condition;      // kappa_2(V)
};

EigenDecomposition eigendecompose(const Operator& a);

}  // namespace sgcalc

#endif
