#pragma once

#include <iosfwd>
#include <vector>

#include "glyphrec/linalg.hpp"

namespace glyphrec {

struct MinMaxScaler {
    Vector min;
    Vector max;
};

// Throws NumericError on NaN or infinite entries.
MinMaxScaler scaler_fit(const Matrix& X);

// y = 2 (x - min) / (max - min) - 1; constant columns map to 0; no clipping.
Matrix scaler_apply(const MinMaxScaler& scaler, const Matrix& X);

struct PcaModel {
    Vector mean;                 // d
    Matrix components;           // k x d, orthonormal rows
    Vector explained_variance;   // k, non-increasing
    Vector explained_ratio;      // k, lambda_i / sum of all d eigenvalues

    int input_dim() const { return static_cast<int>(mean.size()); }
    int output_dim() const { return static_cast<int>(components.rows()); }
};

// Top-k eigenvectors of the sample covariance (divisor n - 1). Each
// component is signed so that its largest-magnitude entry is positive.
// Requires n >= 2 and 1 <= k <= min(n - 1, d).
PcaModel pca_fit(const Matrix& X, int k);

// Keeps the smallest k whose cumulative explained ratio reaches tau
// (0 < tau <= 1), capped at min(n - 1, d).
PcaModel pca_fit_variance(const Matrix& X, double tau);

Matrix pca_transform(const PcaModel& model, const Matrix& X);
Matrix pca_reconstruct(const PcaModel& model, const Matrix& Y);

struct ScreeRow {
    int index;  // 1-based
    double ratio;
    double cumulative;
};

std::vector<ScreeRow> scree(const PcaModel& model);

void save(std::ostream& out, const MinMaxScaler& scaler);
void save(std::ostream& out, const PcaModel& model);
MinMaxScaler load_scaler(std::istream& in);
PcaModel load_pca(std::istream& in);

}  // namespace glyphrec
