#include "glyphrec/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "glyphrec/error.hpp"
#include "glyphrec/model_io.hpp"
#include "glyphrec/preprocess.hpp"

namespace glyphrec {

namespace {

constexpr ClassifierKind kAllClassifiers[] = {ClassifierKind::svm_rbf, ClassifierKind::svm_poly,
                                              ClassifierKind::elm_noreg, ClassifierKind::elm_opt,
                                              ClassifierKind::knn};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::svm_rbf: return "svm_rbf";
        case ClassifierKind::svm_poly: return "svm_poly";
        case ClassifierKind::elm_noreg: return "elm_noreg";
        case ClassifierKind::elm_opt: return "elm_opt";
        case ClassifierKind::knn: return "knn";
    }
    return "?";
}

std::string_view display_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::svm_rbf: return "SVM-RBF";
        case ClassifierKind::svm_poly: return "SVM-Poly";
        case ClassifierKind::elm_noreg: return "ELM-noReg";
        case ClassifierKind::elm_opt: return "ELM-opt";
        case ClassifierKind::knn: return "k-NN";
    }
    return "?";
}

ClassifierKind parse_classifier(std::string_view name) {
    for (ClassifierKind k : kAllClassifiers) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown classifier '" + std::string(name) + "'");
}

PcaSetting parse_pca_setting(std::string_view text) {
    if (text == "off") return PcaSetting::off();
    try {
        if (text.rfind("var:", 0) == 0) {
            std::size_t used = 0;
            const std::string v(text.substr(4));
            const double tau = std::stod(v, &used);
            if (used != v.size() || !(tau > 0.0 && tau <= 1.0)) throw ConfigError("");
            return PcaSetting::by_variance(tau);
        }
        std::size_t used = 0;
        const std::string v(text);
        const int k = std::stoi(v, &used);
        if (used != v.size() || k < 1) throw ConfigError("");
        return PcaSetting::fixed(k);
    } catch (const std::exception&) {
        throw ConfigError("bad PCA setting '" + std::string(text) + "' (expected off, <k> or var:<tau>)");
    }
}

std::string to_string(const PcaSetting& s) {
    switch (s.mode) {
        case PcaSetting::Mode::off: return "off";
        case PcaSetting::Mode::components: return std::to_string(s.components);
        case PcaSetting::Mode::variance: return "var:" + format_real(s.variance);
    }
    return "off";
}

TrainedClassifier train_classifier(ClassifierKind kind, const Matrix& X, const std::vector<int>& y,
                                   int class_count, const ClassifierParams& params) {
    const double gamma = params.gamma.value_or(1.0 / static_cast<double>(std::max<Eigen::Index>(X.cols(), 1)));
    switch (kind) {
        case ClassifierKind::knn: return knn_fit(X, y, class_count, params.knn_k);
        case ClassifierKind::elm_noreg:
            return elm_train(X, y, class_count, params.elm_hidden, kNoRegularization, params.elm_seed);
        case ClassifierKind::elm_opt:
            return elm_train_opt(X, y, class_count, params.elm_hidden, params.elm_seed, params.ridge_grid).model;
        case ClassifierKind::svm_rbf:
            return svm_train(X, y, class_count, Kernel::rbf(gamma), params.svm_C, params.smo);
        case ClassifierKind::svm_poly:
            return svm_train(X, y, class_count, Kernel::poly(gamma, params.poly_coef0, params.poly_degree),
                             params.svm_C, params.smo);
    }
    throw ConfigError("unknown classifier");
}

std::vector<int> predict_all(const TrainedClassifier& model, const Matrix& X) {
    if (const auto* elm = std::get_if<ElmModel>(&model)) return elm_predict_all(*elm, X);
    std::vector<int> out(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const Vector x = X.row(i).transpose();
        out[static_cast<std::size_t>(i)] = std::visit(
            [&](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, KnnModel>) return knn_predict(m, x).label;
                else if constexpr (std::is_same_v<M, SvmModel>) return svm_predict(m, x).label;
                else return elm_predict(m, x).label;
            },
            model);
    }
    return out;
}

Reduction reduce_features(const Matrix& train, const Matrix& test, const PcaSetting& pca) {
    Reduction r;
    r.scaler = scaler_fit(train);
    r.train = scaler_apply(r.scaler, train);
    r.test = scaler_apply(r.scaler, test);
    if (pca.mode == PcaSetting::Mode::off) return r;

    if (pca.mode == PcaSetting::Mode::components) {
        const int cap = static_cast<int>(std::min(r.train.cols(), r.train.rows() - 1));
        r.pca = pca_fit(r.train, std::min(pca.components, cap));
    } else {
        r.pca = pca_fit_variance(r.train, pca.variance);
    }
    r.train = pca_transform(*r.pca, r.train);
    r.test = pca_transform(*r.pca, r.test);
    return r;
}

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> pred, int class_count) {
    if (truth.size() != pred.size()) throw ShapeError("confusion_matrix: length mismatch");
    ConfusionMatrix m(static_cast<std::size_t>(class_count), std::vector<long>(static_cast<std::size_t>(class_count), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || truth[i] >= class_count || pred[i] < 0 || pred[i] >= class_count) {
            throw ConfigError("confusion_matrix: label outside [0, K)");
        }
        ++m[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(pred[i])];
    }
    return m;
}

double accuracy(const ConfusionMatrix& m) {
    long trace = 0, total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            total += m[i][j];
            if (i == j) trace += m[i][j];
        }
    }
    return total ? static_cast<double>(trace) / static_cast<double>(total) : 0.0;
}

namespace {

template <typename E>
[[noreturn]] void rethrow_with(const E&, const std::string& message) {
    throw E(message);
}

}  // namespace

FeatureTable extract_features(const Corpus& corpus) {
    FeatureTable t;
    t.columns.resize(kFeatureDim);
    for (std::size_t j = 0; j < kFeatureDim; ++j) t.columns[j] = j;
    t.values.resize(static_cast<Eigen::Index>(corpus.size()), static_cast<Eigen::Index>(kFeatureDim));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GlyphSample& s = corpus.samples()[i];
        FeatureVector fv;
        try {
            fv = extract_all(preprocess_chain(to_gray(s.image)));
        } catch (const EmptyGlyphError& e) {
            rethrow_with(e, s.sample_id + ": " + e.what());
        } catch (const DataError& e) {
            rethrow_with(e, s.sample_id + ": " + e.what());
        } catch (const ShapeError& e) {
            rethrow_with(e, s.sample_id + ": " + e.what());
        } catch (const ConfigError& e) {
            rethrow_with(e, s.sample_id + ": " + e.what());
        } catch (const NumericError& e) {
            rethrow_with(e, s.sample_id + ": " + e.what());
        }
        t.sample_ids.push_back(s.sample_id);
        t.labels.push_back(s.label);
        for (std::size_t j = 0; j < kFeatureDim; ++j) {
            t.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fv.values[j];
        }
    }
    return t;
}

ResultRow evaluate_classifier(ClassifierKind kind, std::string feature_set, int feature_dim, const Reduction& reduced,
                              const std::vector<int>& y_train, const std::vector<int>& y_test, int class_count,
                              const ClassifierParams& params) {
    ResultRow row;
    row.feature_set = std::move(feature_set);
    row.feature_dim = feature_dim;
    row.model_dim = static_cast<int>(reduced.train.cols());
    row.classifier = kind;

    auto start = Clock::now();
    const TrainedClassifier model = train_classifier(kind, reduced.train, y_train, class_count, params);
    row.train_seconds = seconds_since(start);

    const std::vector<int> train_pred = predict_all(model, reduced.train);
    row.train_accuracy = 100.0 * accuracy(confusion_matrix(y_train, train_pred, class_count));

    start = Clock::now();
    const std::vector<int> test_pred = predict_all(model, reduced.test);
    row.test_seconds = seconds_since(start);

    row.confusion = confusion_matrix(y_test, test_pred, class_count);
    row.test_accuracy = 100.0 * accuracy(row.confusion);
    return row;
}

ExperimentReport run_experiment(const FeatureTable& table, const ExperimentConfig& config) {
    if (config.feature_sets.empty() || config.classifiers.empty()) {
        throw ConfigError("experiment: select at least one feature set and one classifier");
    }
    const int K = table.class_count();
    const SplitIndices split = stratified_indices(table.labels, K, config.split);
    const FeatureTable train = table.select_rows(split.train);
    const FeatureTable test = table.select_rows(split.test);

    std::vector<ClassifierKind> classifiers = config.classifiers;
    std::sort(classifiers.begin(), classifiers.end());
    classifiers.erase(std::unique(classifiers.begin(), classifiers.end()), classifiers.end());

    ExperimentReport report;
    report.class_count = K;
    for (FeatureSet set : config.feature_sets) {
        const FeatureSet one[] = {set};
        const std::vector<std::size_t> cols = feature_columns(one);
        const Reduction reduced = reduce_features(train.select_columns(cols), test.select_columns(cols), config.pca);
        if (reduced.pca) report.scree.push_back({std::string(to_string(set)), scree(*reduced.pca)});
        for (ClassifierKind kind : classifiers) {
            report.rows.push_back(evaluate_classifier(kind, std::string(to_string(set)), static_cast<int>(cols.size()),
                                                      reduced, train.labels, test.labels, K, config.params));
        }
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    if (const auto* spec = std::get_if<SyntheticSpec>(&config.source)) {
        return run_experiment(extract_features(generate_synthetic(*spec)), config);
    }
    return run_experiment(extract_features(std::get<Corpus>(config.source)), config);
}

std::string report_render(const ExperimentReport& report, ReportFormat format) {
    std::ostringstream out;
    char buf[256];
    if (format == ReportFormat::csv) {
        out << "feature_set,feature_dim,model_dim,classifier,train_accuracy,test_accuracy,train_seconds,test_seconds\n";
        for (const ResultRow& r : report.rows) {
            out << r.feature_set << ',' << r.feature_dim << ',' << r.model_dim << ',' << to_string(r.classifier) << ','
                << format_real(r.train_accuracy) << ',' << format_real(r.test_accuracy) << ','
                << format_real(r.train_seconds) << ',' << format_real(r.test_seconds) << '\n';
        }
        return out.str();
    }

    out << "## Recognition accuracy on " << report.class_count << " classes (%)\n\n";
    out << "| Features | Dim | Classifier | Training accuracy (%) | Testing accuracy (%) | Training time (s) | "
           "Testing time (s) |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const ResultRow& r : report.rows) {
        const std::string dim = r.model_dim == r.feature_dim
                                    ? std::to_string(r.feature_dim)
                                    : std::to_string(r.feature_dim) + " -> " + std::to_string(r.model_dim);
        std::snprintf(buf, sizeof buf, "| %s | %s | %s | %.2f | %.2f | %.3f | %.3f |\n", r.feature_set.c_str(),
                      dim.c_str(), std::string(display_name(r.classifier)).c_str(), r.train_accuracy, r.test_accuracy,
                      r.train_seconds, r.test_seconds);
        out << buf;
    }
    for (const ScreeTable& s : report.scree) {
        out << "\n## Variance explained by principal components (" << s.feature_set << ")\n\n";
        out << "| Component | Explained ratio | Cumulative |\n|---|---|---|\n";
        for (const ScreeRow& r : s.rows) {
            std::snprintf(buf, sizeof buf, "| %d | %.6f | %.6f |\n", r.index, r.ratio, r.cumulative);
            out << buf;
        }
    }
    return out.str();
}

std::vector<ResultRow> parse_report_csv(std::string_view csv) {
    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("feature_set,", 0) != 0) throw DataError("report CSV: bad header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw DataError("report CSV: expected 8 fields");
        ResultRow r;
        r.feature_set = f[0];
        r.feature_dim = std::stoi(f[1]);
        r.model_dim = std::stoi(f[2]);
        r.classifier = parse_classifier(f[3]);
        r.train_accuracy = parse_real(f[4]);
        r.test_accuracy = parse_real(f[5]);
        r.train_seconds = parse_real(f[6]);
        r.test_seconds = parse_real(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace glyphrec
