#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "glyphrec/elm.hpp"
#include "glyphrec/error.hpp"
#include "glyphrec/model_io.hpp"
#include "glyphrec/rng.hpp"

namespace glyphrec {

ElmModel elm_init(int input_dim, int hidden, std::uint64_t seed) {
    if (input_dim < 1 || hidden < 1) throw ConfigError("elm: input dimension and hidden count must be positive");
    Rng rng(seed);
    ElmModel m;
    m.seed = seed;
    m.W.resize(hidden, input_dim);
    for (int i = 0; i < hidden; ++i) {
        for (int j = 0; j < input_dim; ++j) m.W(i, j) = rng.uniform(-1.0, 1.0);
    }
    m.bias.resize(hidden);
    for (int i = 0; i < hidden; ++i) m.bias(i) = rng.uniform(-1.0, 1.0);
    return m;
}

Matrix elm_hidden(const ElmModel& model, const Matrix& X) {
    if (X.cols() != model.W.cols()) throw ShapeError("elm: input dimension mismatch");
    Matrix z = X * model.W.transpose();
    z.rowwise() += model.bias.transpose();
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

Matrix elm_targets(const std::vector<int>& y, int class_count) {
    Matrix T = Matrix::Constant(static_cast<Eigen::Index>(y.size()), class_count, -1.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= class_count) throw ConfigError("elm: label out of range");
        T(static_cast<Eigen::Index>(i), y[i]) = 1.0;
    }
    return T;
}

namespace {

struct GramEigen {
    bool primal;  // eigendecomposition of H^T H (L <= n), else of H H^T
    Vector values;
    Matrix vectors;
};

GramEigen gram_eigen(const Matrix& H) {
    GramEigen g;
    g.primal = H.cols() <= H.rows();
    const Matrix gram = g.primal ? Matrix(H.transpose() * H) : Matrix(H * H.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericError("elm: Gram eigendecomposition failed");
    g.values = solver.eigenvalues();
    g.vectors = solver.eigenvectors();
    return g;
}

// Applies V diag(f(lambda)) V^T to M.
Matrix spectral_apply(const GramEigen& g, const Vector& scale, const Matrix& M) {
    return g.vectors * (scale.asDiagonal() * (g.vectors.transpose() * M));
}

Vector pinv_scale(const Vector& values, double cutoff) {
    const double top = values.size() ? values.maxCoeff() : 0.0;
    Vector s(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        s(i) = (top > 0.0 && values(i) > cutoff * top) ? 1.0 / values(i) : 0.0;
    }
    return s;
}

// beta = (I/C + H^T H)^-1 H^T T, or equivalently H^T (I/C + H H^T)^-1 T.
Matrix ridge_beta(const GramEigen& g, const Matrix& H, const Matrix& T, double C) {
    const Vector s = (g.values.array() + 1.0 / C).inverse().matrix();
    if (g.primal) return spectral_apply(g, s, H.transpose() * T);
    return H.transpose() * spectral_apply(g, s, T);
}

Matrix ridge_solve(const Matrix& H, const Matrix& T, double C) {
    if (H.cols() <= H.rows()) {
        Matrix A = H.transpose() * H;
        A.diagonal().array() += 1.0 / C;
        Eigen::LLT<Matrix> llt(A);
        if (llt.info() != Eigen::Success) throw NumericError("elm: ridge system not positive definite");
        return llt.solve(H.transpose() * T);
    }
    Matrix A = H * H.transpose();
    A.diagonal().array() += 1.0 / C;
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) throw NumericError("elm: ridge system not positive definite");
    return H.transpose() * llt.solve(T);
}

double holdout_accuracy(const ElmModel& m, const Matrix& X, const std::vector<int>& y) {
    const std::vector<int> pred = elm_predict_all(m, X);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ok += pred[i] == y[i] ? 1 : 0;
    return y.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(y.size());
}

}  // namespace

Matrix pseudo_inverse(const Matrix& H, double cutoff) {
    const GramEigen g = gram_eigen(H);
    const Vector s = pinv_scale(g.values, cutoff);
    if (g.primal) return spectral_apply(g, s, H.transpose());
    return H.transpose() * spectral_apply(g, s, Matrix::Identity(H.rows(), H.rows()));
}

ElmModel elm_train(const Matrix& X, const std::vector<int>& y, int class_count, int hidden, double C,
                   std::uint64_t seed) {
    if (X.rows() < 1) throw ConfigError("elm_train: need at least one sample");
    if (static_cast<std::size_t>(X.rows()) != y.size()) throw ShapeError("elm_train: label count mismatch");
    if (!(C > 0.0)) throw ConfigError("elm_train: C must be positive");
    ElmModel m = elm_init(static_cast<int>(X.cols()), hidden, seed);
    m.C = C;
    const Matrix H = elm_hidden(m, X);
    const Matrix T = elm_targets(y, class_count);
    if (std::isinf(C)) {
        const GramEigen g = gram_eigen(H);
        const Vector s = pinv_scale(g.values, 1e-10);
        m.beta = g.primal ? spectral_apply(g, s, H.transpose() * T) : Matrix(H.transpose() * spectral_apply(g, s, T));
    } else {
        m.beta = ridge_solve(H, T, C);
    }
    return m;
}

Prediction elm_predict(const ElmModel& model, const Vector& x) {
    if (x.size() != model.W.cols()) throw ShapeError("elm_predict: dimension mismatch");
    const Matrix out = elm_hidden(model, x.transpose()) * model.beta;
    Prediction p;
    p.scores.assign(out.data(), out.data() + out.size());
    p.label = static_cast<int>(std::max_element(p.scores.begin(), p.scores.end()) - p.scores.begin());
    return p;
}

std::vector<int> elm_predict_all(const ElmModel& model, const Matrix& X) {
    const Matrix out = elm_hidden(model, X) * model.beta;
    std::vector<int> labels(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        Eigen::Index arg = 0;
        for (Eigen::Index c = 1; c < out.cols(); ++c) {
            if (out(i, c) > out(i, arg)) arg = c;
        }
        labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    }
    return labels;
}

std::vector<double> default_ridge_grid() {
    std::vector<double> grid;
    for (int e = -5; e <= 15; ++e) grid.push_back(std::ldexp(1.0, e));
    return grid;
}

ElmSelection elm_train_opt(const Matrix& X, const std::vector<int>& y, int class_count, int hidden,
                           std::uint64_t seed, std::span<const double> grid) {
    if (grid.empty()) throw ConfigError("elm_train_opt: empty ridge grid");
    if (static_cast<std::size_t>(X.rows()) != y.size()) throw ShapeError("elm_train_opt: label count mismatch");

    std::vector<Eigen::Index> fit_rows, hold_rows;
    for (Eigen::Index i = 0; i < X.rows(); ++i) (i % 5 == 4 ? hold_rows : fit_rows).push_back(i);
    if (fit_rows.empty() || hold_rows.empty()) throw ConfigError("elm_train_opt: need at least 5 samples");

    auto gather = [&](const std::vector<Eigen::Index>& rows, Matrix& Xs, std::vector<int>& ys) {
        Xs.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
        ys.clear();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Xs.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
            ys.push_back(y[static_cast<std::size_t>(rows[i])]);
        }
    };
    Matrix X_fit, X_hold;
    std::vector<int> y_fit, y_hold;
    gather(fit_rows, X_fit, y_fit);
    gather(hold_rows, X_hold, y_hold);

    ElmModel probe = elm_init(static_cast<int>(X.cols()), hidden, seed);
    const Matrix H = elm_hidden(probe, X_fit);
    const Matrix T = elm_targets(y_fit, class_count);
    const GramEigen g = gram_eigen(H);

    ElmSelection sel;
    double best = -1.0;
    for (double C : grid) {
        if (!(C > 0.0)) throw ConfigError("elm_train_opt: ridge constants must be positive");
        probe.C = C;
        probe.beta = ridge_beta(g, H, T, C);
        const double acc = holdout_accuracy(probe, X_hold, y_hold);
        sel.holdout_accuracy.push_back(acc);
        if (acc > best) {
            best = acc;
            sel.best_C = C;
        }
    }
    sel.model = elm_train(X, y, class_count, hidden, sel.best_C, seed);
    return sel;
}

void save(std::ostream& out, const ElmModel& model) {
    ModelWriter w(out, "elm");
    w.text("activation", "sigmoid");
    w.integer("seed", static_cast<std::int64_t>(model.seed));
    w.real("C", model.C);
    w.matrix("W", model.W);
    w.vector("bias", model.bias);
    w.matrix("beta", model.beta);
}

ElmModel load_elm(std::istream& in) {
    const ModelReader r(in, "elm");
    if (r.text("activation") != "sigmoid") throw DataError("elm: unsupported activation");
    ElmModel m;
    m.seed = static_cast<std::uint64_t>(r.integer("seed"));
    m.C = r.real("C");
    m.W = r.matrix("W");
    m.bias = r.vector("bias");
    m.beta = r.matrix("beta");
    if (m.bias.size() != m.W.rows() || m.beta.rows() != m.W.rows()) throw DataError("elm: dimensions disagree");
    return m;
}

}  // namespace glyphrec
