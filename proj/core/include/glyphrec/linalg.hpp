#pragma once

#include <Eigen/Dense>

namespace glyphrec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymmetricEigen {
    Vector values;   // descending
    Matrix vectors;  // column i pairs with values[i]
    int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
// Frobenius norm drops below tol * ||A||_F. Throws NumericError if
// max_sweeps is exhausted.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tol = 1e-14, int max_sweeps = 100);

// Sample covariance with divisor n - 1 (n >= 2).
Matrix sample_covariance(const Matrix& rows);

}  // namespace glyphrec
