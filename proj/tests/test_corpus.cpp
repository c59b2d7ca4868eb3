#include <doctest.h>

#include <fstream>
#include <set>

#include "glyphrec/corpus.hpp"
#include "glyphrec/error.hpp"
#include "glyphrec/features.hpp"
#include "glyphrec/image_io.hpp"
#include "glyphrec/preprocess.hpp"
#include "glyphrec/rng.hpp"
#include "tempdir.hpp"

using namespace glyphrec;
namespace fs = std::filesystem;

namespace {

ByteImage blob_image(int w, int h, int seed) {
    ByteImage img(w, h, std::uint8_t{240});
    for (int y = h / 4; y < 3 * h / 4; ++y) {
        for (int x = w / 4 + seed % 3; x < 3 * w / 4; ++x) img.at(x, y) = 15;
    }
    return img;
}

std::vector<int> labels_of(int classes, int per_class) {
    std::vector<int> labels;
    for (int i = 0; i < classes * per_class; ++i) labels.push_back(i % classes);
    return labels;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("Rng is reproducible and in range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto k = c.below(7);
        CHECK(k < 7);
        const int v = c.between(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
    // std::mt19937_64's 10000th output from the default seed is fixed by the
    // C++ standard.
    Rng d(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = d.next_u64();
    CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("Corpus validates its invariants") {
    std::vector<GlyphSample> ok{{ByteImage(8, 8, std::uint8_t{0}), 0, "a"}, {ByteImage(9, 8, std::uint8_t{0}), 1, "b"}};
    const Corpus c(ok, {"x", "y"});
    CHECK(c.class_count() == 2);
    CHECK(c.class_populations() == std::vector<std::size_t>{1, 1});

    std::vector<GlyphSample> dup{{ByteImage(8, 8, std::uint8_t{0}), 0, "a"}, {ByteImage(8, 8, std::uint8_t{0}), 0, "a"}};
    CHECK_THROWS_AS(Corpus(dup, {"x"}), DataError);
    std::vector<GlyphSample> bad_label{{ByteImage(8, 8, std::uint8_t{0}), 2, "a"}};
    CHECK_THROWS_AS(Corpus(bad_label, {"x", "y"}), DataError);
    std::vector<GlyphSample> small{{ByteImage(7, 8, std::uint8_t{0}), 0, "a"}};
    CHECK_THROWS_AS(Corpus(small, {"x"}), DataError);
}

TEST_CASE("load_directory: two classes of three images") {
    TempDir tmp("load");
    for (const char* cls : {"beta", "alpha"}) {
        fs::create_directories(tmp.path() / cls);
        for (int i = 0; i < 3; ++i) {
            const fs::path p = tmp.path() / cls / ("g" + std::to_string(i) + (i == 1 ? ".pgm" : ".png"));
            if (i == 1) {
                write_pgm(p, blob_image(20, 16, i));
            } else {
                write_png(p, blob_image(20, 16, i));
            }
        }
    }
    std::ofstream(tmp.path() / "alpha" / "notes.txt") << "ignored";
    const LoadReport r = load_directory(tmp.path());
    CHECK(r.corpus.class_count() == 2);
    CHECK(r.corpus.size() == 6);
    CHECK(r.corpus.class_names() == std::vector<std::string>{"alpha", "beta"});
    CHECK(r.corpus.samples().front().label == 0);
    CHECK(r.corpus.samples().back().label == 1);
    CHECK(r.warnings.empty());
    CHECK(r.corpus.samples()[0].image == blob_image(20, 16, 0));
    CHECK(r.corpus.samples()[1].image == blob_image(20, 16, 1));
}

TEST_CASE("load_directory: a corrupt file becomes a warning") {
    TempDir tmp("corrupt");
    fs::create_directories(tmp.path() / "a");
    fs::create_directories(tmp.path() / "b");
    for (int i = 0; i < 10; ++i) {
        const fs::path p = tmp.path() / (i < 5 ? "a" : "b") / ("g" + std::to_string(i) + ".png");
        if (i == 7) {
            std::ofstream(p) << "not a png";
        } else {
            write_png(p, blob_image(12, 12, i));
        }
    }
    const LoadReport r = load_directory(tmp.path());
    CHECK(r.corpus.size() == 9);
    CHECK(r.warnings.size() == 1);
    CHECK(r.paths.size() == 9);
}

TEST_CASE("load_directory errors") {
    TempDir tmp("empty");
    CHECK_THROWS_AS(load_directory(tmp.path()), DataError);
    CHECK_THROWS_AS(load_directory(tmp.path() / "missing"), DataError);
}

TEST_CASE("PGM reader handles comments and rejects wide maxval") {
    TempDir tmp("pgm");
    {
        std::ofstream f(tmp.path() / "c.pgm", std::ios::binary);
        f << "P5\n# comment\n3 2\n255\n";
        const char px[] = {0, 10, 20, 30, 40, 50};
        f.write(px, 6);
    }
    const ByteImage img = read_gray_image(tmp.path() / "c.pgm");
    CHECK(img.width() == 3);
    CHECK(img.at(2, 1) == 50);
    {
        std::ofstream f(tmp.path() / "w.pgm", std::ios::binary);
        f << "P5 1 1 65535\n";
        f.write("\0\0", 2);
    }
    CHECK_THROWS_AS(read_gray_image(tmp.path() / "w.pgm"), DataError);
}

TEST_CASE("generate_synthetic is deterministic and sized") {
    SyntheticSpec s{2, 5, 7, default_distortion()};
    const Corpus a = generate_synthetic(s);
    const Corpus b = generate_synthetic(s);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.samples()[i].image == b.samples()[i].image);
        CHECK(a.samples()[i].sample_id == b.samples()[i].sample_id);
        CHECK(a.samples()[i].label == b.samples()[i].label);
        CHECK(a.samples()[i].image.width() == 96);
    }
    s.seed = 8;
    const Corpus c = generate_synthetic(s);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a.samples()[i].image == c.samples()[i].image);
    CHECK(differs);

    CHECK(generate_synthetic(SyntheticSpec{10, 130, 1, default_distortion()}).size() == 1300);
    CHECK_THROWS_AS(generate_synthetic(SyntheticSpec{1, 5, 1, {}}), ConfigError);
    Distortion wild;
    wild.noise_flip_prob = 0.3;
    CHECK_THROWS_AS(generate_synthetic(SyntheticSpec{2, 5, 1, wild}), ConfigError);
}

TEST_CASE("synthetic templates are distinct, cycled classes too") {
    const Corpus c = generate_synthetic(SyntheticSpec{20, 1, 3, Distortion{}});
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& s : c.samples()) seen.insert(s.image.pixels());
    CHECK(seen.size() == 20);
    CHECK(c.class_names()[0] == "ring");
    CHECK(c.class_names()[10] != c.class_names()[0]);
}

TEST_CASE("undistorted ring has one loop") {
    const Corpus c = generate_synthetic(SyntheticSpec{2, 1, 1, Distortion{}});
    const Preprocessed p = preprocess_chain(to_gray(c.samples()[0].image));
    CHECK(count_loops(p.skeleton) == 1);
    CHECK(count_endpoints(p.skeleton) == 0);
}

TEST_CASE("split_stratified sizes, disjointness and determinism") {
    const Corpus c = generate_synthetic(SyntheticSpec{3, 12, 5, default_distortion()});
    const SplitSpec spec{7, 4, 99};
    const auto [train, test] = split_stratified(c, spec);
    CHECK(train.size() == 21);
    CHECK(test.size() == 12);
    CHECK(train.class_populations() == std::vector<std::size_t>{7, 7, 7});
    CHECK(test.class_populations() == std::vector<std::size_t>{4, 4, 4});
    std::set<std::string> ids;
    for (const auto& s : train.samples()) ids.insert(s.sample_id);
    for (const auto& s : test.samples()) CHECK(ids.count(s.sample_id) == 0);

    const auto again = split_stratified(c, spec);
    for (std::size_t i = 0; i < train.size(); ++i) CHECK(train.samples()[i].sample_id == again.first.samples()[i].sample_id);
    // Shuffled, not grouped by class.
    bool interleaved = false;
    for (std::size_t i = 1; i < train.size(); ++i) interleaved |= train.samples()[i].label < train.samples()[i - 1].label;
    CHECK(interleaved);
}

TEST_CASE("stratified split at the paper's scale") {
    const auto labels = labels_of(90, 200);
    const SplitIndices s = stratified_indices(labels, 90, SplitSpec{150, 50, 1});
    CHECK(s.train.size() == 13500);
    CHECK(s.test.size() == 4500);
    std::vector<int> seen(labels.size(), 0);
    for (auto i : s.train) ++seen[i];
    for (auto i : s.test) ++seen[i];
    for (int v : seen) CHECK(v <= 1);
}

TEST_CASE("split property over random shapes") {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int K = rng.between(2, 8), per = rng.between(2, 20);
        const int a = rng.between(1, per - 1), b = rng.between(1, per - a);
        const auto labels = labels_of(K, per);
        const SplitIndices s = stratified_indices(labels, K, SplitSpec{a, b, rng.next_u64()});
        CHECK(s.train.size() == static_cast<std::size_t>(K * a));
        CHECK(s.test.size() == static_cast<std::size_t>(K * b));
        std::set<std::size_t> tr(s.train.begin(), s.train.end());
        for (auto i : s.test) CHECK(tr.count(i) == 0);
    }
}

TEST_CASE("insufficient population names the class") {
    const auto labels = labels_of(2, 10);
    try {
        stratified_indices(labels, 2, SplitSpec{10, 1, 0});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("class 0") != std::string::npos);
    }
}

TEST_CASE("save_corpus writes a loadable tree and manifest") {
    TempDir tmp("save");
    const Corpus c = generate_synthetic(SyntheticSpec{3, 2, 5, default_distortion()});
    save_corpus(tmp.path(), c);
    std::ifstream m(tmp.path() / "manifest.csv");
    std::string header;
    std::getline(m, header);
    CHECK(header == "sample_id,label,class_name,path");
    int rows = 0;
    for (std::string line; std::getline(m, line);) rows += line.empty() ? 0 : 1;
    CHECK(rows == 6);
    const LoadReport r = load_directory(tmp.path());
    REQUIRE(r.corpus.size() == 6);
    CHECK(r.corpus.class_count() == 3);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.corpus.samples()[i].image == c.samples()[i].image);
        CHECK(r.corpus.samples()[i].label == c.samples()[i].label);
    }
}

}  // TEST_SUITE
