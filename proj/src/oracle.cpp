#include "sgcalc/oracle.hpp"

#include "sgcalc/errors.hpp"

namespace sgcalc {

Operator eig_oracle(const std::function<Complex(Complex)>& f, const Operator& a,
                    double cond_cap) {
    const EigenDecomposition d = eigendecompose(a);
    if (!(d.condition < cond_cap))
        throw DomainError("eig_oracle: defective or ill-conditioned eigenvector matrix");
    Eigen::VectorXcd fd(d.values.size());
    for (int i = 0; i < d.values.size(); ++i) fd(i) = f(-d.values(i));
    return d.vectors * fd.asDiagonal() * d.vectors_inv;
}

}  // namespace sgcalc
