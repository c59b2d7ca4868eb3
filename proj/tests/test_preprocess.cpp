#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "glyphrec/corpus.hpp"
#include "glyphrec/error.hpp"
#include "glyphrec/features.hpp"
#include "glyphrec/preprocess.hpp"
#include "glyphrec/rng.hpp"
#include "oracles.hpp"

using namespace glyphrec;

namespace {

GrayImage random_gray(Rng& rng, int w, int h, double lo = 0.0, double hi = 255.0) {
    GrayImage g(w, h);
    for (double& v : g.pixels()) v = rng.uniform(lo, hi);
    return g;
}

// Exhaustive Otsu: for every split t, between-class variance of the classes
// {<= t} and {> t}; first maximum wins.
int otsu_oracle(const std::vector<int>& values) {
    double best = -1.0;
    int best_t = -1;
    for (int t = 0; t < 255; ++t) {
        double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
        for (int v : values) {
            if (v <= t) {
                n0 += 1;
                s0 += v;
            } else {
                n1 += 1;
                s1 += v;
            }
        }
        if (n0 == 0 || n1 == 0) continue;
        const double d = s0 / n0 - s1 / n1;
        const double between = n0 * n1 * d * d;
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("binarize: constant image is all background") {
    const GrayImage g(10, 10, 128.0);
    CHECK(count_foreground(binarize(g)) == 0);
}

TEST_CASE("binarize: two-level image puts the 20% side in the foreground") {
    GrayImage g(10, 10, 200.0);
    for (int i = 0; i < 20; ++i) g.pixels()[static_cast<std::size_t>(i * 5)] = 10.0;
    std::vector<int> vals;
    for (double v : g.pixels()) vals.push_back(static_cast<int>(v));
    const int t = otsu_oracle(vals);
    CHECK(t == otsu_threshold(g));
    CHECK(t >= 10);
    CHECK(t < 200);
    const BinaryImage b = binarize(g);
    CHECK(count_foreground(b) == 20);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK((b.pixels()[i] == 1) == (g.pixels()[i] == 10.0));
}

TEST_CASE("binarize: dark blob on white gives exactly the blob") {
    GrayImage g(30, 20, 240.0);
    int blob = 0;
    for (int y = 5; y < 12; ++y) {
        for (int x = 8; x < 15; ++x) {
            if ((x - 11) * (x - 11) + (y - 8) * (y - 8) <= 9) {
                g.at(x, y) = 30.0;
                ++blob;
            }
        }
    }
    CHECK(count_foreground(binarize(g)) == static_cast<std::size_t>(blob));
}

TEST_CASE("otsu_threshold matches the exhaustive sweep on random histograms") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        GrayImage g(17, 13);
        std::vector<int> vals;
        const int modes = rng.between(2, 4);
        for (double& v : g.pixels()) {
            const int m = rng.between(0, modes - 1);
            v = std::clamp(40.0 + 60.0 * m + rng.uniform(-25.0, 25.0), 0.0, 255.0);
            v = std::round(v);
            vals.push_back(static_cast<int>(v));
        }
        CHECK(otsu_threshold(g) == otsu_oracle(vals));
    }
}

TEST_CASE("bounding_box") {
    BinaryImage b(10, 10, std::uint8_t{0});
    b.at(3, 5) = 1;
    CHECK(bounding_box(b) == Rect{3, 5, 1, 1});
    BinaryImage c(12, 12, std::uint8_t{0});
    for (int y = 2; y <= 9; ++y) {
        for (int x = 4; x <= 7; ++x) c.at(x, y) = 1;
    }
    CHECK(bounding_box(c) == Rect{4, 2, 4, 8});
    CHECK_THROWS_AS(bounding_box(BinaryImage(5, 5, std::uint8_t{0})), EmptyGlyphError);
}

TEST_CASE("resize_bicubic: constants stay constant") {
    const GrayImage g(7, 11, 42.5);
    const GrayImage r = resize_bicubic(g, 64);
    CHECK(r.width() == 64);
    CHECK(r.height() == 64);
    for (double v : r.pixels()) CHECK(v == doctest::Approx(42.5).epsilon(1e-12));
}

TEST_CASE("resize_bicubic: identity at native size") {
    Rng rng(3);
    const GrayImage g = random_gray(rng, 64, 64);
    const GrayImage r = resize_bicubic(g, 64);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::fabs(r.pixels()[i] - g.pixels()[i]) <= 1e-9);
}

TEST_CASE("resize_bicubic: 2x2 checkerboard to 4x4 matches direct convolution") {
    GrayImage g(2, 2);
    g.at(0, 0) = 0.0;
    g.at(1, 0) = 255.0;
    g.at(0, 1) = 255.0;
    g.at(1, 1) = 0.0;
    const GrayImage r = resize_bicubic(g, 4);
    const GrayImage o = oracle::bicubic_direct(g, 4);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r.pixels()[i] == doctest::Approx(o.pixels()[i]).epsilon(1e-12));
}

TEST_CASE("resize_bicubic: random rectangles match direct convolution") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage g = random_gray(rng, rng.between(2, 40), rng.between(2, 40));
        const int side = rng.between(2, 70);
        const GrayImage r = resize_bicubic(g, side);
        const GrayImage o = oracle::bicubic_direct(g, side);
        for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::fabs(r.pixels()[i] - o.pixels()[i]) <= 1e-9);
    }
    CHECK_THROWS_AS(resize_bicubic(GrayImage(4, 4), 1), ConfigError);
}

TEST_CASE("catmull_rom kernel values") {
    CHECK(catmull_rom(0.0) == 1.0);
    CHECK(catmull_rom(1.0) == doctest::Approx(0.0));
    CHECK(catmull_rom(2.0) == 0.0);
    CHECK(catmull_rom(0.5) == doctest::Approx(0.5625));
    CHECK(catmull_rom(-1.5) == doctest::Approx(-0.0625));
}

TEST_CASE("normalize_zero_mean") {
    const GrayImage c(4, 4, 77.0);
    const GrayImage z = normalize_zero_mean(c);
    for (double v : z.pixels()) CHECK(v == 0.0);
    GrayImage two(2, 1);
    two.at(0, 0) = 0.0;
    two.at(1, 0) = 100.0;
    const GrayImage n = normalize_zero_mean(two);
    CHECK(n.at(0, 0) == -50.0);
    CHECK(n.at(1, 0) == 50.0);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage z = normalize_zero_mean(random_gray(rng, 64, 64));
        double s = 0.0;
        for (double v : z.pixels()) s += v;
        CHECK(std::fabs(s / static_cast<double>(z.size())) <= 1e-9);
    }
}

TEST_CASE("gaussian_smooth_3x3") {
    const GrayImage c(6, 5, 9.0);
    const GrayImage flat = gaussian_smooth_3x3(c);
    for (double v : flat.pixels()) CHECK(v == 9.0);

    GrayImage d(5, 5, 0.0);
    d.at(2, 2) = 16.0;
    const GrayImage s = gaussian_smooth_3x3(d);
    CHECK(s.at(2, 2) == 4.0);
    CHECK(s.at(1, 2) == 2.0);
    CHECK(s.at(3, 2) == 2.0);
    CHECK(s.at(2, 1) == 2.0);
    CHECK(s.at(2, 3) == 2.0);
    CHECK(s.at(1, 1) == 1.0);
    CHECK(s.at(3, 3) == 1.0);
    CHECK(s.at(0, 0) == 0.0);

    CHECK_THROWS_AS(gaussian_smooth_3x3(GrayImage(2, 2)), ShapeError);
}

TEST_CASE("gaussian_smooth_3x3 keeps values inside the input range") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage g = random_gray(rng, rng.between(3, 30), rng.between(3, 30), -50.0, 80.0);
        const auto [lo, hi] = std::minmax_element(g.pixels().begin(), g.pixels().end());
        const GrayImage s = gaussian_smooth_3x3(g);
        for (double v : s.pixels()) {
            CHECK(v >= *lo - 1e-12);
            CHECK(v <= *hi + 1e-12);
        }
    }
}

TEST_CASE("skeletonize: 3-pixel bar becomes a path with two endpoints") {
    BinaryImage b(26, 9, std::uint8_t{0});
    oracle::fill_rect(b, 3, 3, 22, 5);
    const Skeleton s = skeletonize(b);
    CHECK(oracle::strictly_thin(s.image()));
    CHECK(oracle::pixels_with_neighbors(s.image(), 1) == 2);
    CHECK(oracle::pixels_with_neighbors(s.image(), 3) == 0);
    CHECK(oracle::foreground_components(s.image()) == 1);
}

TEST_CASE("skeletonize: square ring with 3-pixel walls keeps its hole") {
    BinaryImage b(24, 24, std::uint8_t{0});
    oracle::fill_rect(b, 3, 3, 20, 20);
    for (int y = 6; y <= 17; ++y) {
        for (int x = 6; x <= 17; ++x) b.at(x, y) = 0;
    }
    const Skeleton s = skeletonize(b);
    CHECK(oracle::holes(s.image()) == 1);
    CHECK(oracle::strictly_thin(s.image()));
    CHECK(count_loops(s) == 1);
}

TEST_CASE("skeletonize: thin lines are fixed points") {
    BinaryImage b(20, 20, std::uint8_t{0});
    oracle::line(b, 2, 3, 17, 3);
    CHECK(skeletonize(b).image() == b);
    BinaryImage d(20, 20, std::uint8_t{0});
    oracle::line(d, 1, 1, 15, 15);
    CHECK(skeletonize(d).image() == d);
    const BinaryImage empty(8, 8, std::uint8_t{0});
    CHECK(skeletonize(empty).image() == empty);
}

TEST_CASE("skeletonize: subset, hole preservation and component bound on random blobs") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const BinaryImage b = oracle::random_blobs(rng, 64);
        const BinaryImage s = skeletonize(b).image();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (s.pixels()[i]) REQUIRE(b.pixels()[i]);
        }
        CHECK(oracle::holes(s) == oracle::holes(b));
        CHECK(oracle::foreground_components(s) <= oracle::foreground_components(b));
    }
}

TEST_CASE("skeletonize: thinness on random blobs") {
    // A 2x2 block can survive only where every pixel of it is needed to keep
    // the topology (several branches meeting at one core).
    Rng rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const BinaryImage s = skeletonize(oracle::random_blobs(rng, 64)).image();
        for (int y = 0; y + 1 < s.height(); ++y) {
            for (int x = 0; x + 1 < s.width(); ++x) {
                if (!(s.at(x, y) && s.at(x + 1, y) && s.at(x, y + 1) && s.at(x + 1, y + 1))) continue;
                CHECK_FALSE(oracle::is_simple(s, x, y));
                CHECK_FALSE(oracle::is_simple(s, x + 1, y));
                CHECK_FALSE(oracle::is_simple(s, x, y + 1));
                CHECK_FALSE(oracle::is_simple(s, x + 1, y + 1));
            }
        }
        CHECK(is_thin(s) == oracle::strictly_thin(s));
    }
}

TEST_CASE("preprocess_chain on undistorted templates") {
    for (int c = 0; c < 10; ++c) {
        const Preprocessed p = preprocess_chain(to_gray(render_template(c, 4)));
        CHECK(p.gray.width() == 64);
        CHECK(p.gray.height() == 64);
        CHECK(p.binary.width() == 64);
        CHECK(p.skeleton.width() == 64);
        CHECK(p.skeleton.height() == 64);
        CHECK(oracle::strictly_thin(p.skeleton.image()));
        CHECK(p.aspect_ratio > 0.0);
    }
    const Preprocessed ring = preprocess_chain(to_gray(render_template(0, 4)));
    CHECK(oracle::holes(ring.skeleton.image()) == 1);
    CHECK(oracle::pixels_with_neighbors(ring.skeleton.image(), 1) == 0);
}

TEST_CASE("preprocess_chain: aspect ratio comes from the original box") {
    GrayImage g(100, 60, 250.0);
    for (int y = 10; y < 30; ++y) {
        for (int x = 20; x < 80; ++x) g.at(x, y) = 5.0;
    }
    const Preprocessed p = preprocess_chain(g);
    CHECK(p.aspect_ratio == doctest::Approx(60.0 / 20.0));
    CHECK(count_foreground(p.binary) == 64u * 64u);
}

TEST_CASE("preprocess_chain: blank page is an empty glyph") {
    CHECK_THROWS_AS(preprocess_chain(GrayImage(40, 40, 255.0)), EmptyGlyphError);
}

}  // TEST_SUITE
