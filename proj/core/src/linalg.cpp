#include "glyphrec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "glyphrec/error.hpp"

namespace glyphrec {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) s += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tol, int max_sweeps) {
    if (symmetric.rows() != symmetric.cols()) throw ShapeError("jacobi_eigen: matrix must be square");
    const Eigen::Index n = symmetric.rows();
    Matrix a = 0.5 * (symmetric + symmetric.transpose());
    Matrix v = Matrix::Identity(n, n);

    const double norm = a.norm();
    SymmetricEigen out;
    int sweep = 0;
    if (norm > 0.0) {
        for (; sweep < max_sweeps && off_diagonal_norm(a) > tol * norm; ++sweep) {
            for (Eigen::Index p = 0; p < n - 1; ++p) {
                for (Eigen::Index q = p + 1; q < n; ++q) {
                    const double apq = a(p, q);
                    if (apq == 0.0) continue;
                    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    // A <- J^T A J, touching only rows/columns p and q.
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double akp = a(k, p);
                        const double akq = a(k, q);
                        a(k, p) = c * akp - s * akq;
                        a(k, q) = s * akp + c * akq;
                    }
                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double apk = a(p, k);
                        const double aqk = a(q, k);
                        a(p, k) = c * apk - s * aqk;
                        a(q, k) = s * apk + c * aqk;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;

                    for (Eigen::Index k = 0; k < n; ++k) {
                        const double vkp = v(k, p);
                        const double vkq = v(k, q);
                        v(k, p) = c * vkp - s * vkq;
                        v(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
        if (off_diagonal_norm(a) > tol * norm) {
            throw NumericError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.values(i) = a(src, src);
        out.vectors.col(i) = v.col(src);
    }
    out.sweeps = sweep;
    return out;
}

Matrix sample_covariance(const Matrix& rows) {
    if (rows.rows() < 2) throw ShapeError("sample_covariance: need at least two rows");
    const Eigen::RowVectorXd mean = rows.colwise().mean();
    const Matrix centered = rows.rowwise() - mean;
    return (centered.transpose() * centered) / static_cast<double>(rows.rows() - 1);
}

}  // namespace glyphrec
