#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glyphrec/classify.hpp"
#include "glyphrec/corpus.hpp"
#include "glyphrec/feature_io.hpp"
#include "glyphrec/features.hpp"
#include "glyphrec/reduce.hpp"

namespace glyphrec {

// Declaration order is the report's column order.
enum class ClassifierKind { svm_rbf, svm_poly, elm_noreg, elm_opt, knn };

std::string_view to_string(ClassifierKind kind);
std::string_view display_name(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view name);

struct PcaSetting {
    enum class Mode { off, components, variance };
    Mode mode = Mode::off;
    int components = 76;
    double variance = 0.95;

    static PcaSetting off() { return {}; }
    static PcaSetting fixed(int k) { return {Mode::components, k, 0.95}; }
    static PcaSetting by_variance(double tau) { return {Mode::variance, 76, tau}; }
};

// "off", "<k>" or "var:<tau>".
PcaSetting parse_pca_setting(std::string_view text);
std::string to_string(const PcaSetting& setting);

struct ClassifierParams {
    int knn_k = 5;
    int elm_hidden = 1000;
    std::uint64_t elm_seed = 1;
    std::vector<double> ridge_grid = default_ridge_grid();
    double svm_C = 10.0;
    int poly_degree = 3;
    double poly_coef0 = 1.0;
    SmoOptions smo;
    // RBF and polynomial gamma default to 1 / input dimension when unset.
    std::optional<double> gamma;
};

using TrainedClassifier = std::variant<KnnModel, ElmModel, SvmModel>;

TrainedClassifier train_classifier(ClassifierKind kind, const Matrix& X, const std::vector<int>& y,
                                   int class_count, const ClassifierParams& params);
std::vector<int> predict_all(const TrainedClassifier& model, const Matrix& X);

struct Reduction {
    MinMaxScaler scaler;
    std::optional<PcaModel> pca;
    Matrix train;
    Matrix test;
};

// Fits the scaler (and PCA when enabled) on `train` only, then applies both
// to train and test. PCA k is capped at min(d, n - 1).
Reduction reduce_features(const Matrix& train, const Matrix& test, const PcaSetting& pca);

using ConfusionMatrix = std::vector<std::vector<long>>;

// M[truth][pred]; throws ShapeError on length mismatch and ConfigError on a
// label outside [0, K).
ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> pred, int class_count);
double accuracy(const ConfusionMatrix& m);

struct ExperimentConfig {
    std::variant<Corpus, SyntheticSpec> source;
    SplitSpec split;
    std::vector<FeatureSet> feature_sets{FeatureSet::combined};
    PcaSetting pca = PcaSetting::fixed(76);
    std::vector<ClassifierKind> classifiers{ClassifierKind::knn};
    ClassifierParams params;
};

struct ResultRow {
    std::string feature_set;
    int feature_dim = 0;  // before PCA
    int model_dim = 0;    // after PCA
    ClassifierKind classifier = ClassifierKind::knn;
    double train_accuracy = 0.0;  // percent
    double test_accuracy = 0.0;   // percent
    double train_seconds = 0.0;
    double test_seconds = 0.0;
    ConfusionMatrix confusion;    // test set
};

struct ScreeTable {
    std::string feature_set;
    std::vector<ScreeRow> rows;
};

struct ExperimentReport {
    int class_count = 0;
    std::vector<ResultRow> rows;
    std::vector<ScreeTable> scree;
};

// Preprocesses and extracts every sample. Failures are rethrown as the same
// error type with the sample_id prepended.
FeatureTable extract_features(const Corpus& corpus);

// split -> extract -> scale -> optional PCA -> train -> evaluate, for every
// (feature set, classifier) pair. Timings cover train/predict calls only.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Same, on an already-extracted table.
ExperimentReport run_experiment(const FeatureTable& table, const ExperimentConfig& config);

// Rows are evaluated on (train, test) matrices already reduced.
ResultRow evaluate_classifier(ClassifierKind kind, std::string feature_set, int feature_dim,
                              const Reduction& reduced, const std::vector<int>& y_train,
                              const std::vector<int>& y_test, int class_count,
                              const ClassifierParams& params);

enum class ReportFormat { csv, markdown };

std::string report_render(const ExperimentReport& report, ReportFormat format);

// Parses the CSV rendering back into rows (confusion matrices are not part
// of the CSV).
std::vector<ResultRow> parse_report_csv(std::string_view csv);

}  // namespace glyphrec
