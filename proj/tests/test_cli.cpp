#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "glyphrec/feature_io.hpp"
#include "glyphrec/features.hpp"
#include "tempdir.hpp"

#ifdef GLYPHREC_CLI_PATH

namespace {

// Runs the CLI with stdout/stderr captured into dir/log.txt.
int run(const TempDir& dir, const std::string& args) {
    const std::string cmd = std::string("\"") + GLYPHREC_CLI_PATH + "\" " + args + " > \"" +
                            (dir.path() / "log.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cli: usage errors exit 1") {
    TempDir dir("cli_usage");
    CHECK(run(dir, "") == 1);
    CHECK(run(dir, "frobnicate") == 1);
    CHECK(run(dir, "synth --classes 3") == 1);
    CHECK(run(dir, "synth --classes 0 --per-class 2 --out " + q(dir.path() / "c")) == 1);
    CHECK(run(dir, "--help") == 0);
}

TEST_CASE("cli: synth, extract, train, eval, scree") {
    TempDir dir("cli_flow");
    const auto corpus = dir.path() / "corpus";
    const auto feats = dir.path() / "features.csv";
    const auto model = dir.path() / "model";

    REQUIRE(run(dir, "synth --classes 3 --per-class 12 --seed 4 --out " + q(corpus)) == 0);
    CHECK(std::filesystem::exists(corpus / "manifest.csv"));

    REQUIRE(run(dir, "extract --corpus " + q(corpus) + " --features topo,zones,transitions,lbp --out " + q(feats)) == 0);
    const glyphrec::FeatureTable t = glyphrec::read_feature_csv(feats);
    CHECK(t.rows() == 36);
    CHECK(t.columns.size() == glyphrec::kFeatureDim);
    CHECK(t.class_count() == 3);

    REQUIRE(run(dir, "train --features " + q(feats) +
                         " --split-seed 2 --train-per-class 8 --test-per-class 4 --pca 20"
                         " --clf knn,elm_noreg,elm_opt,svm_rbf,svm_poly --model-out " + q(model)) == 0);
    for (const char* f : {"meta.txt", "scaler.txt", "pca.txt", "knn.model", "elm_noreg.model", "elm_opt.model",
                          "svm_rbf.model", "svm_poly.model"}) {
        CHECK_MESSAGE(std::filesystem::exists(model / f), f);
    }

    const auto md = dir.path() / "report.md";
    REQUIRE(run(dir, "eval --model " + q(model) + " --features " + q(feats) + " --report " + q(md) +
                         " --format markdown") == 0);
    const std::string report = slurp(md);
    CHECK(report.find("| Features | Dim | Classifier |") != std::string::npos);
    CHECK(report.find("k-NN") != std::string::npos);

    const auto csv = dir.path() / "report.csv";
    REQUIRE(run(dir, "eval --model " + q(model) + " --features " + q(feats) + " --report " + q(csv) +
                         " --format csv") == 0);
    std::istringstream lines(slurp(csv));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) n += !line.empty();
    CHECK(n == 6);  // header + five classifiers

    const auto scree = dir.path() / "scree.csv";
    REQUIRE(run(dir, "scree --features " + q(feats) + " --out " + q(scree)) == 0);
    const std::string s = slurp(scree);
    CHECK(s.rfind("component,explained_ratio,cumulative_ratio\n", 0) == 0);

    // Same inputs, same model files.
    const auto model2 = dir.path() / "model2";
    REQUIRE(run(dir, "train --features " + q(feats) +
                         " --split-seed 2 --train-per-class 8 --test-per-class 4 --pca 20"
                         " --clf svm_rbf,elm_opt --model-out " + q(model2)) == 0);
    CHECK(slurp(model / "svm_rbf.model") == slurp(model2 / "svm_rbf.model"));
    CHECK(slurp(model / "elm_opt.model") == slurp(model2 / "elm_opt.model"));

    // A split larger than the class population is a usage error.
    CHECK(run(dir, "train --features " + q(feats) +
                       " --train-per-class 10 --test-per-class 5 --clf knn --model-out " + q(dir.path() / "m3")) == 1);
    CHECK(run(dir, "train --features " + q(feats) + " --pca var:7 --model-out " + q(dir.path() / "m4")) == 1);
    CHECK(run(dir, "train --features " + q(feats) + " --clf forest --model-out " + q(dir.path() / "m5")) == 1);
}

TEST_CASE("cli: data errors exit 2, numeric errors exit 3") {
    TempDir dir("cli_errors");
    CHECK(run(dir, "extract --corpus " + q(dir.path() / "missing") + " --out " + q(dir.path() / "f.csv")) == 2);
    CHECK(run(dir, "scree --features " + q(dir.path() / "missing.csv") + " --out " + q(dir.path() / "s.csv")) == 2);
    CHECK(run(dir, "eval --model " + q(dir.path() / "nomodel") + " --features " + q(dir.path() / "x.csv") +
                       " --report " + q(dir.path() / "r.md")) == 2);

    const auto bad = dir.path() / "bad.csv";
    {
        std::ofstream out(bad);
        out << "sample_id,label,f0,f1\na/1,0,1.0\n";
    }
    CHECK(run(dir, "scree --features " + q(bad) + " --out " + q(dir.path() / "s.csv")) == 2);

    const auto nan = dir.path() / "nan.csv";
    {
        std::ofstream out(nan);
        out << "sample_id,label,f0,f1\na/1,0,1.0,2.0\na/2,0,nan,1.0\nb/1,1,0.5,0.5\nb/2,1,0.1,0.2\n";
    }
    CHECK(run(dir, "scree --features " + q(nan) + " --out " + q(dir.path() / "s.csv")) == 3);
    CHECK(run(dir, "train --features " + q(nan) + " --train-per-class 1 --test-per-class 1 --pca off --clf knn"
                       " --model-out " + q(dir.path() / "m")) == 3);
}

}  // TEST_SUITE

#endif
