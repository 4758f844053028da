#ifndef SGCALC_ORACLE_HPP
#define SGCALC_ORACLE_HPP

#include <functional>

#include "sgcalc/operator_utils.hpp"

namespace sgcalc {

// Independent ground truth for diagonalizable A: V diag(F(-a_i)) V^{-1}.
// Rejects defective or badly conditioned eigenvector matrices.
Operator eig_oracle(const std::function<Complex(Complex)>& f, const Operator& a,
                    double cond_cap = 1e8);

}  // namespace sgcalc

#endif
