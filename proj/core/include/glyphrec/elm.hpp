#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "glyphrec/prediction.hpp"
#include "glyphrec/linalg.hpp"

namespace glyphrec {

inline constexpr double kNoRegularization = std::numeric_limits<double>::infinity();

// Single-hidden-layer network with frozen random input weights and a sigmoid
// hidden layer. Output weights solve a least-squares fit to +/-1 one-hot
// targets: minimum-norm (pseudoinverse) when C is infinite, ridge otherwise.
struct ElmModel {
    Matrix W;     // L x d, uniform on [-1, 1]
    Vector bias;  // L, uniform on [-1, 1]
    Matrix beta;  // L x K
    double C = kNoRegularization;
    std::uint64_t seed = 0;

    int hidden() const { return static_cast<int>(W.rows()); }
    int input_dim() const { return static_cast<int>(W.cols()); }
    int class_count() const { return static_cast<int>(beta.cols()); }
};

// Draws W row-major, then the biases, from Rng(seed).
ElmModel elm_init(int input_dim, int hidden, std::uint64_t seed);

Matrix elm_hidden(const ElmModel& model, const Matrix& X);
Matrix elm_targets(const std::vector<int>& y, int class_count);

ElmModel elm_train(const Matrix& X, const std::vector<int>& y, int class_count, int hidden,
                   double C, std::uint64_t seed);

// Moore-Penrose pseudoinverse through the eigendecomposition of the smaller
// Gram matrix; eigenvalues below cutoff * largest are dropped.
Matrix pseudo_inverse(const Matrix& H, double cutoff = 1e-10);

Prediction elm_predict(const ElmModel& model, const Vector& x);
std::vector<int> elm_predict_all(const ElmModel& model, const Matrix& X);

// Ridge constants 2^-5 ... 2^15.
std::vector<double> default_ridge_grid();

struct ElmSelection {
    ElmModel model;
    double best_C = 0.0;
    std::vector<double> holdout_accuracy;  // parallel to the grid
};

// Every fifth training row (index % 5 == 4) is held out; the C with the best
// held-out accuracy (smallest C on ties) is refit on all rows.
ElmSelection elm_train_opt(const Matrix& X, const std::vector<int>& y, int class_count, int hidden,
                           std::uint64_t seed, std::span<const double> grid);

void save(std::ostream& out, const ElmModel& model);
ElmModel load_elm(std::istream& in);

}  // namespace glyphrec
