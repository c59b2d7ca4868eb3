#include "glyphrec/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "glyphrec/error.hpp"
#include "glyphrec/model_io.hpp"

namespace glyphrec {

MinMaxScaler scaler_fit(const Matrix& X) {
    if (X.rows() < 1 || X.cols() < 1) throw ShapeError("scaler_fit: empty matrix");
    if (!X.allFinite()) throw NumericError("scaler_fit: non-finite feature value");
    return MinMaxScaler{X.colwise().minCoeff().transpose(), X.colwise().maxCoeff().transpose()};
}

Matrix scaler_apply(const MinMaxScaler& scaler, const Matrix& X) {
    if (X.cols() != scaler.min.size()) throw ShapeError("scaler_apply: column count mismatch");
    Matrix Y(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double lo = scaler.min(j);
        const double range = scaler.max(j) - lo;
        if (range > 0.0) {
            // Divide rather than multiply by 2/range so the fitted extremes
            // land on -1 and +1 exactly.
            Y.col(j) = (2.0 * ((X.col(j).array() - lo) / range) - 1.0).matrix();
        } else {
            Y.col(j).setZero();
        }
    }
    return Y;
}

namespace {

PcaModel pca_fit_full(const Matrix& X, int k_max) {
    const SymmetricEigen eig = jacobi_eigen(sample_covariance(X));
    const Eigen::Index d = X.cols();

    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) total += std::max(eig.values(i), 0.0);

    PcaModel m;
    m.mean = X.colwise().mean().transpose();
    m.components.resize(k_max, d);
    m.explained_variance.resize(k_max);
    m.explained_ratio.resize(k_max);
    for (int i = 0; i < k_max; ++i) {
        Vector v = eig.vectors.col(i);
        Eigen::Index arg = 0;
        for (Eigen::Index j = 1; j < d; ++j) {
            if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
        }
        if (v(arg) < 0.0) v = -v;
        m.components.row(i) = v.transpose();
        const double lambda = std::max(eig.values(i), 0.0);
        m.explained_variance(i) = lambda;
        m.explained_ratio(i) = total > 0.0 ? lambda / total : 0.0;
    }
    return m;
}

PcaModel truncate(const PcaModel& m, int k) {
    return PcaModel{m.mean, m.components.topRows(k), m.explained_variance.head(k), m.explained_ratio.head(k)};
}

}  // namespace

PcaModel pca_fit(const Matrix& X, int k) {
    const Eigen::Index n = X.rows();
    const Eigen::Index d = X.cols();
    if (n < 2) throw ConfigError("pca_fit: need at least two rows");
    if (k < 1 || k > std::min(n - 1, d)) {
        throw ConfigError("pca_fit: k=" + std::to_string(k) + " outside [1, min(n-1, d)=" +
                          std::to_string(std::min(n - 1, d)) + "]");
    }
    return pca_fit_full(X, k);
}

PcaModel pca_fit_variance(const Matrix& X, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("pca_fit_variance: tau must be in (0, 1]");
    if (X.rows() < 2) throw ConfigError("pca_fit_variance: need at least two rows");
    const int k_max = static_cast<int>(std::min(X.rows() - 1, X.cols()));
    const PcaModel full = pca_fit_full(X, k_max);
    double cumulative = 0.0;
    int k = 1;
    for (; k < k_max; ++k) {
        cumulative += full.explained_ratio(k - 1);
        if (cumulative >= tau) break;
    }
    return truncate(full, k);
}

Matrix pca_transform(const PcaModel& model, const Matrix& X) {
    if (X.cols() != model.mean.size()) throw ShapeError("pca_transform: column count mismatch");
    return (X.rowwise() - model.mean.transpose()) * model.components.transpose();
}

Matrix pca_reconstruct(const PcaModel& model, const Matrix& Y) {
    if (Y.cols() != model.components.rows()) throw ShapeError("pca_reconstruct: column count mismatch");
    return (Y * model.components).rowwise() + model.mean.transpose();
}

std::vector<ScreeRow> scree(const PcaModel& model) {
    std::vector<ScreeRow> rows;
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < model.explained_ratio.size(); ++i) {
        cumulative += model.explained_ratio(i);
        rows.push_back({static_cast<int>(i) + 1, model.explained_ratio(i), cumulative});
    }
    return rows;
}

void save(std::ostream& out, const MinMaxScaler& scaler) {
    ModelWriter w(out, "minmax");
    w.integer("d", scaler.min.size());
    w.vector("min", scaler.min);
    w.vector("max", scaler.max);
}

void save(std::ostream& out, const PcaModel& model) {
    ModelWriter w(out, "pca");
    w.integer("d", model.input_dim());
    w.integer("k", model.output_dim());
    w.vector("mean", model.mean);
    w.matrix("components", model.components);
    w.vector("explained_variance", model.explained_variance);
    w.vector("explained_ratio", model.explained_ratio);
}

MinMaxScaler load_scaler(std::istream& in) {
    const ModelReader r(in, "minmax");
    MinMaxScaler s{r.vector("min"), r.vector("max")};
    if (s.min.size() != r.integer("d") || s.max.size() != s.min.size()) throw DataError("scaler dimensions disagree");
    return s;
}

PcaModel load_pca(std::istream& in) {
    const ModelReader r(in, "pca");
    PcaModel m{r.vector("mean"), r.matrix("components"), r.vector("explained_variance"), r.vector("explained_ratio")};
    const auto d = r.integer("d");
    const auto k = r.integer("k");
    if (m.mean.size() != d || m.components.rows() != k || m.components.cols() != d ||
        m.explained_variance.size() != k || m.explained_ratio.size() != k) {
        throw DataError("pca model dimensions disagree");
    }
    return m;
}

}  // namespace glyphrec
