#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "glyphrec/error.hpp"
#include "glyphrec/knn.hpp"
#include "glyphrec/model_io.hpp"

namespace glyphrec {

KnnModel knn_fit(Matrix X, std::vector<int> y, int class_count, int k) {
    if (static_cast<std::size_t>(X.rows()) != y.size()) throw ShapeError("knn_fit: label count mismatch");
    if (k < 1 || k > X.rows()) throw ConfigError("knn_fit: k must be in [1, n]");
    for (int l : y) {
        if (l < 0 || l >= class_count) throw ConfigError("knn_fit: label out of range");
    }
    return KnnModel{std::move(X), std::move(y), k, class_count};
}

Prediction knn_predict(const KnnModel& model, const Vector& x) {
    if (x.size() != model.X_train.cols()) throw ShapeError("knn_predict: dimension mismatch");
    const Eigen::Index n = model.X_train.rows();
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        dist[static_cast<std::size_t>(i)] = (model.X_train.row(i).transpose() - x).squaredNorm();
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto k = static_cast<std::ptrdiff_t>(model.k);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double da = dist[static_cast<std::size_t>(a)], db = dist[static_cast<std::size_t>(b)];
        return da < db || (da == db && a < b);
    });

    Prediction p;
    p.scores.assign(static_cast<std::size_t>(model.class_count), 0.0);
    for (std::ptrdiff_t i = 0; i < k; ++i) {
        p.scores[static_cast<std::size_t>(model.y_train[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])] += 1.0;
    }
    const double top = *std::max_element(p.scores.begin(), p.scores.end());
    // Neighbours are in distance order, so the first one with a top-voted
    // label settles any tie.
    for (std::ptrdiff_t i = 0; i < k; ++i) {
        const int label = model.y_train[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        if (p.scores[static_cast<std::size_t>(label)] == top) {
            p.label = label;
            break;
        }
    }
    return p;
}

namespace {

void write_header(ModelWriter& w, const KnnModel& model) {
    w.integer("k", model.k);
    w.integer("class_count", model.class_count);
}

}  // namespace

void save(std::ostream& out, const KnnModel& model) {
    ModelWriter w(out, "knn");
    write_header(w, model);
    w.text("storage", "rows");
    w.matrix("X_train", model.X_train);
    Vector labels(static_cast<Eigen::Index>(model.y_train.size()));
    for (std::size_t i = 0; i < model.y_train.size(); ++i) labels(static_cast<Eigen::Index>(i)) = model.y_train[i];
    w.vector("y_train", labels);
}

void save_reference(std::ostream& out, const KnnModel& model, const KnnReference& ref) {
    ModelWriter w(out, "knn");
    write_header(w, model);
    w.text("storage", "reference");
    w.text("features_path", ref.features_path);
    w.integer("split_seed", static_cast<std::int64_t>(ref.split.seed));
    w.integer("train_per_class", ref.split.train_per_class);
    w.integer("test_per_class", ref.split.test_per_class);
}

KnnFile load_knn(std::istream& in) {
    const ModelReader r(in, "knn");
    KnnFile f;
    f.k = static_cast<int>(r.integer("k"));
    f.class_count = static_cast<int>(r.integer("class_count"));
    const std::string& storage = r.text("storage");
    if (storage == "rows") {
        const Vector& labels = r.vector("y_train");
        std::vector<int> y(static_cast<std::size_t>(labels.size()));
        for (Eigen::Index i = 0; i < labels.size(); ++i) y[static_cast<std::size_t>(i)] = static_cast<int>(labels(i));
        f.model = knn_fit(r.matrix("X_train"), std::move(y), f.class_count, f.k);
    } else if (storage == "reference") {
        KnnReference ref;
        ref.features_path = r.text("features_path");
        ref.split.seed = static_cast<std::uint64_t>(r.integer("split_seed"));
        ref.split.train_per_class = static_cast<int>(r.integer("train_per_class"));
        ref.split.test_per_class = static_cast<int>(r.integer("test_per_class"));
        f.reference = ref;
    } else {
        throw DataError("knn model: unknown storage '" + storage + "'");
    }
    return f;
}

}  // namespace glyphrec
