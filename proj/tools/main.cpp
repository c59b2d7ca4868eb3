// glyphrec command-line front end: synth, extract, train, eval, scree,
// experiment. Exit codes: 0 ok, 1 usage, 2 data, 3 numeric.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "glyphrec/corpus.hpp"
#include "glyphrec/error.hpp"
#include "glyphrec/eval.hpp"
#include "glyphrec/feature_io.hpp"
#include "glyphrec/features.hpp"
#include "glyphrec/model_io.hpp"
#include "glyphrec/reduce.hpp"

namespace fs = std::filesystem;
using namespace glyphrec;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw ConfigError("empty list '" + text + "'");
    return out;
}

std::vector<FeatureSet> parse_sets(const std::string& text) {
    std::vector<FeatureSet> sets;
    for (const auto& s : split_list(text)) sets.push_back(parse_feature_set(s));
    return sets;
}

std::vector<ClassifierKind> parse_classifiers(const std::string& text) {
    std::vector<ClassifierKind> kinds;
    for (const auto& s : split_list(text)) kinds.push_back(parse_classifier(s));
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    return kinds;
}

// Name of the feature set a column list came from, for report rows.
std::string describe_columns(const std::vector<std::size_t>& cols) {
    for (FeatureSet s : {FeatureSet::combined, FeatureSet::topo, FeatureSet::zones, FeatureSet::transitions,
                         FeatureSet::lbp}) {
        const FeatureSet one[] = {s};
        if (feature_columns(one) == cols) return std::string(to_string(s));
    }
    std::string name;
    for (FeatureSet s : {FeatureSet::topo, FeatureSet::zones, FeatureSet::transitions, FeatureSet::lbp}) {
        const Segment seg = segment_of(s);
        if (std::find(cols.begin(), cols.end(), seg.begin) != cols.end()) {
            name += (name.empty() ? "" : "+") + std::string(to_string(s));
        }
    }
    return name.empty() ? "custom" : name;
}

std::ofstream open_out(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw DataError("cannot write " + p.string());
    return out;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DataError("cannot read " + p.string());
    return in;
}

Vector to_vector(const std::vector<std::size_t>& v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = static_cast<double>(v[i]);
    return out;
}

std::vector<std::size_t> from_vector(const Vector& v) {
    std::vector<std::size_t> out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) < 0) throw DataError("negative column index in model metadata");
        out.push_back(static_cast<std::size_t>(v(i)));
    }
    return out;
}

Matrix apply_reduction(const MinMaxScaler& scaler, const std::optional<PcaModel>& pca, const Matrix& X) {
    Matrix Y = scaler_apply(scaler, X);
    return pca ? pca_transform(*pca, Y) : Y;
}

std::string model_file(ClassifierKind k) { return std::string(to_string(k)) + ".model"; }

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
    int classes = 10;
    int per_class = 130;
    std::uint64_t seed = 1;
    std::string out;
    bool clean = false;
};

int run_synth(const SynthArgs& a) {
    SyntheticSpec spec;
    spec.class_count = a.classes;
    spec.samples_per_class = a.per_class;
    spec.seed = a.seed;
    spec.distortion = a.clean ? Distortion{} : default_distortion();
    const Corpus corpus = generate_synthetic(spec);
    save_corpus(a.out, corpus);
    std::cout << "wrote " << corpus.size() << " samples in " << corpus.class_count() << " classes to " << a.out
              << "\n";
    return kOk;
}

// ---- extract --------------------------------------------------------------

struct ExtractArgs {
    std::string corpus;
    std::string features = "topo,zones,transitions,lbp";
    std::string out;
};

int run_extract(const ExtractArgs& a) {
    LoadReport loaded = load_directory(a.corpus);
    for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    const std::vector<std::size_t> cols = feature_columns(parse_sets(a.features));
    const FeatureTable full = extract_features(loaded.corpus);

    FeatureTable t;
    t.sample_ids = full.sample_ids;
    t.labels = full.labels;
    t.columns = cols;
    t.values = full.select_columns(cols);
    write_feature_csv(fs::path(a.out), t);
    std::cout << "extracted " << t.rows() << " x " << cols.size() << " features to " << a.out << "\n";
    return kOk;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    std::string features;
    std::uint64_t split_seed = 1;
    int train_per_class = 150;
    int test_per_class = 50;
    std::string pca = "76";
    std::string clf = "knn,elm_noreg,elm_opt,svm_rbf,svm_poly";
    std::string model_out;
};

int run_train(const TrainArgs& a) {
    const FeatureTable table = read_feature_csv(fs::path(a.features));
    const SplitSpec split{a.train_per_class, a.test_per_class, a.split_seed};
    const PcaSetting pca = parse_pca_setting(a.pca);
    const std::vector<ClassifierKind> kinds = parse_classifiers(a.clf);
    const int K = table.class_count();

    const SplitIndices idx = stratified_indices(table.labels, K, split);
    const FeatureTable train = table.select_rows(idx.train);
    const Matrix X = train.select_columns(table.columns);
    const Reduction red = reduce_features(X, Matrix(0, X.cols()), pca);

    const fs::path dir(a.model_out);
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "scaler.txt");
        save(out, red.scaler);
    }
    if (red.pca) {
        auto out = open_out(dir / "pca.txt");
        save(out, *red.pca);
    }

    ClassifierParams params;
    std::ostringstream meta_text;
    ModelWriter meta(meta_text, "experiment");
    meta.text("features_path", fs::absolute(a.features).lexically_normal().string());
    meta.integer("split_seed", static_cast<std::int64_t>(split.seed));
    meta.integer("train_per_class", split.train_per_class);
    meta.integer("test_per_class", split.test_per_class);
    meta.text("pca", to_string(pca));
    meta.integer("class_count", K);
    meta.vector("columns", to_vector(table.columns));

    std::string names;
    for (ClassifierKind kind : kinds) {
        const auto start = std::chrono::steady_clock::now();
        const TrainedClassifier model = train_classifier(kind, red.train, train.labels, K, params);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const ConfusionMatrix cm = confusion_matrix(train.labels, predict_all(model, red.train), K);

        auto out = open_out(dir / model_file(kind));
        if (const auto* knn = std::get_if<KnnModel>(&model)) {
            save_reference(out, *knn, KnnReference{fs::absolute(a.features).lexically_normal().string(), split});
        } else if (const auto* elm = std::get_if<ElmModel>(&model)) {
            save(out, *elm);
        } else if (const auto* svm = std::get_if<SvmModel>(&model)) {
            save(out, *svm);
            for (const SvmPair& p : svm->pairs) {
                if (!p.converged) {
                    std::cerr << "warning: " << to_string(kind) << " pair (" << p.positive << "," << p.negative
                              << ") hit the SMO update budget\n";
                }
            }
        }
        const std::string key(to_string(kind));
        meta.real(key + ".train_accuracy", 100.0 * accuracy(cm));
        meta.real(key + ".train_seconds", secs);
        names += (names.empty() ? "" : ",") + key;
        std::cout << display_name(kind) << ": train accuracy " << 100.0 * accuracy(cm) << "%, " << secs << " s\n";
    }
    meta.text("classifiers", names);
    auto out = open_out(dir / "meta.txt");
    out << meta_text.str();
    return kOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
    std::string model;
    std::string features;
    std::string report;
    std::string format = "markdown";
};

int run_eval(const EvalArgs& a) {
    ReportFormat fmt;
    if (a.format == "markdown") {
        fmt = ReportFormat::markdown;
    } else if (a.format == "csv") {
        fmt = ReportFormat::csv;
    } else {
        throw ConfigError("unknown report format '" + a.format + "'");
    }

    const fs::path dir(a.model);
    auto meta_in = open_in(dir / "meta.txt");
    const ModelReader meta(meta_in, "experiment");
    const SplitSpec split{static_cast<int>(meta.integer("train_per_class")),
                          static_cast<int>(meta.integer("test_per_class")),
                          static_cast<std::uint64_t>(meta.integer("split_seed"))};
    const int K = static_cast<int>(meta.integer("class_count"));
    const std::vector<std::size_t> cols = from_vector(meta.vector("columns"));

    auto scaler_in = open_in(dir / "scaler.txt");
    const MinMaxScaler scaler = load_scaler(scaler_in);
    std::optional<PcaModel> pca;
    if (fs::exists(dir / "pca.txt")) {
        auto in = open_in(dir / "pca.txt");
        pca = load_pca(in);
    }

    const FeatureTable table = read_feature_csv(fs::path(a.features));
    if (table.class_count() > K) throw DataError("feature file has more classes than the model");
    const SplitIndices idx = stratified_indices(table.labels, K, split);
    const FeatureTable test = table.select_rows(idx.test);
    const Matrix X_test = apply_reduction(scaler, pca, test.select_columns(cols));

    ExperimentReport report;
    report.class_count = K;
    const std::string set_name = describe_columns(cols);
    for (const auto& name : split_list(meta.text("classifiers"))) {
        const ClassifierKind kind = parse_classifier(name);
        auto in = open_in(dir / model_file(kind));
        TrainedClassifier model;
        if (kind == ClassifierKind::knn) {
            KnnFile f = load_knn(in);
            if (f.model) {
                model = std::move(*f.model);
            } else {
                const FeatureTable src = f.reference->features_path == fs::absolute(a.features).lexically_normal()
                                             ? table
                                             : read_feature_csv(fs::path(f.reference->features_path));
                const SplitIndices s = stratified_indices(src.labels, K, f.reference->split);
                const FeatureTable tr = src.select_rows(s.train);
                model = knn_fit(apply_reduction(scaler, pca, tr.select_columns(cols)), tr.labels, f.class_count, f.k);
            }
        } else if (kind == ClassifierKind::svm_rbf || kind == ClassifierKind::svm_poly) {
            model = load_svm(in);
        } else {
            model = load_elm(in);
        }

        ResultRow row;
        row.feature_set = set_name;
        row.feature_dim = static_cast<int>(cols.size());
        row.model_dim = static_cast<int>(X_test.cols());
        row.classifier = kind;
        row.train_accuracy = meta.real(name + ".train_accuracy");
        row.train_seconds = meta.real(name + ".train_seconds");
        const auto start = std::chrono::steady_clock::now();
        const std::vector<int> pred = predict_all(model, X_test);
        row.test_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.confusion = confusion_matrix(test.labels, pred, K);
        row.test_accuracy = 100.0 * accuracy(row.confusion);
        report.rows.push_back(std::move(row));
    }
    if (pca) report.scree.push_back({set_name, scree(*pca)});

    auto out = open_out(a.report);
    out << report_render(report, fmt);
    for (const ResultRow& r : report.rows) {
        std::cout << display_name(r.classifier) << ": test accuracy " << r.test_accuracy << "%\n";
    }
    return kOk;
}

// ---- scree ----------------------------------------------------------------

struct ScreeArgs {
    std::string features;
    std::string out;
};

int run_scree(const ScreeArgs& a) {
    const FeatureTable table = read_feature_csv(fs::path(a.features));
    const Matrix X = scaler_apply(scaler_fit(table.values), table.values);
    const int k = static_cast<int>(std::min<Eigen::Index>(X.cols(), X.rows() - 1));
    if (k < 1) throw ConfigError("scree needs at least two samples");
    const PcaModel m = pca_fit(X, k);
    auto out = open_out(a.out);
    out << "component,explained_ratio,cumulative_ratio\n";
    for (const ScreeRow& r : scree(m)) {
        out << r.index << ',' << format_real(r.ratio) << ',' << format_real(r.cumulative) << '\n';
    }
    return kOk;
}

// ---- experiment -----------------------------------------------------------

struct ExperimentArgs {
    std::string corpus;
    int classes = 10;
    int per_class = 130;
    std::uint64_t seed = 1;
    std::uint64_t split_seed = 1;
    int train_per_class = 100;
    int test_per_class = 30;
    std::string sets = "topo,zones,transitions,lbp,combined";
    std::string pca = "76";
    std::string clf = "svm_rbf,svm_poly,elm_noreg,elm_opt,knn";
    std::string report;
    std::string format = "markdown";
};

int run_experiment_cmd(const ExperimentArgs& a) {
    ExperimentConfig cfg;
    if (!a.corpus.empty()) {
        LoadReport loaded = load_directory(a.corpus);
        for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
        cfg.source = std::move(loaded.corpus);
    } else {
        cfg.source = SyntheticSpec{a.classes, a.per_class, a.seed, default_distortion()};
    }
    cfg.split = {a.train_per_class, a.test_per_class, a.split_seed};
    cfg.feature_sets = parse_sets(a.sets);
    cfg.pca = parse_pca_setting(a.pca);
    cfg.classifiers = parse_classifiers(a.clf);
    const ReportFormat fmt = a.format == "csv" ? ReportFormat::csv : ReportFormat::markdown;
    if (a.format != "csv" && a.format != "markdown") throw ConfigError("unknown report format '" + a.format + "'");

    const std::string text = report_render(run_experiment(cfg), fmt);
    if (a.report.empty()) {
        std::cout << text;
    } else {
        auto out = open_out(a.report);
        out << text;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Handwritten glyph recognition: features, PCA and k-NN/ELM/SVM classifiers"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* cs = app.add_subcommand("synth", "Write a seeded synthetic glyph corpus (PNG tree + manifest.csv)");
    cs->add_option("--classes", synth.classes, "Number of classes")->check(CLI::Range(2, 100000));
    cs->add_option("--per-class", synth.per_class, "Samples per class")->check(CLI::PositiveNumber);
    cs->add_option("--seed", synth.seed, "Generator seed");
    cs->add_option("--out", synth.out, "Output directory")->required();
    cs->add_flag("--clean", synth.clean, "Render undistorted templates");

    ExtractArgs extract;
    auto* ce = app.add_subcommand("extract", "Preprocess a corpus directory and write a feature CSV");
    ce->add_option("--corpus", extract.corpus, "Corpus root (one subdirectory per class)")->required();
    ce->add_option("--features", extract.features, "Comma list of topo,zones,transitions,lbp,combined");
    ce->add_option("--out", extract.out, "Feature CSV to write")->required();

    TrainArgs train;
    auto* ct = app.add_subcommand("train", "Split, scale, reduce and train classifiers");
    ct->add_option("--features", train.features, "Feature CSV")->required();
    ct->add_option("--split-seed", train.split_seed, "Seed of the stratified split");
    ct->add_option("--train-per-class", train.train_per_class)->check(CLI::PositiveNumber);
    ct->add_option("--test-per-class", train.test_per_class)->check(CLI::PositiveNumber);
    ct->add_option("--pca", train.pca, "76 | var:0.95 | off");
    ct->add_option("--clf", train.clf, "Comma list of knn,elm_noreg,elm_opt,svm_rbf,svm_poly");
    ct->add_option("--model-out", train.model_out, "Model directory")->required();

    EvalArgs eval;
    auto* cv = app.add_subcommand("eval", "Evaluate a trained model directory on its test split");
    cv->add_option("--model", eval.model, "Model directory")->required();
    cv->add_option("--features", eval.features, "Feature CSV")->required();
    cv->add_option("--report", eval.report, "Report file")->required();
    cv->add_option("--format", eval.format, "markdown | csv");

    ScreeArgs scr;
    auto* cp = app.add_subcommand("scree", "Explained-variance table of the scaled features");
    cp->add_option("--features", scr.features, "Feature CSV")->required();
    cp->add_option("--out", scr.out, "CSV to write")->required();

    ExperimentArgs exp;
    auto* cx = app.add_subcommand("experiment", "End-to-end feature-set x classifier sweep");
    cx->add_option("--corpus", exp.corpus, "Corpus root; synthetic when omitted");
    cx->add_option("--classes", exp.classes)->check(CLI::Range(2, 100000));
    cx->add_option("--per-class", exp.per_class)->check(CLI::PositiveNumber);
    cx->add_option("--seed", exp.seed, "Synthetic corpus seed");
    cx->add_option("--split-seed", exp.split_seed);
    cx->add_option("--train-per-class", exp.train_per_class)->check(CLI::PositiveNumber);
    cx->add_option("--test-per-class", exp.test_per_class)->check(CLI::PositiveNumber);
    cx->add_option("--sets", exp.sets, "Comma list of feature sets");
    cx->add_option("--pca", exp.pca, "76 | var:0.95 | off");
    cx->add_option("--clf", exp.clf, "Comma list of classifiers");
    cx->add_option("--report", exp.report, "Report file; stdout when omitted");
    cx->add_option("--format", exp.format, "markdown | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*cs) return run_synth(synth);
        if (*ce) return run_extract(extract);
        if (*ct) return run_train(train);
        if (*cv) return run_eval(eval);
        if (*cp) return run_scree(scr);
        if (*cx) return run_experiment_cmd(exp);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
