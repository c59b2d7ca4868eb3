// Hand-built skeleton fixtures shared by the feature tests and the
// acceptance binary.
#pragma once

#include "glyphrec/raster.hpp"
#include "oracles.hpp"

namespace fixture {

using glyphrec::BinaryImage;

// n disjoint 1-pixel square outlines in a row.
inline BinaryImage rings(int n) {
    BinaryImage img(8 + 10 * (n > 0 ? n : 1), 14, std::uint8_t{0});
    for (int i = 0; i < n; ++i) oracle::rect_outline(img, 2 + 10 * i, 2, 9 + 10 * i, 11);
    return img;
}

// Two outlines sharing one corner pixel.
inline BinaryImage figure_eight() {
    BinaryImage img(18, 18, std::uint8_t{0});
    oracle::rect_outline(img, 1, 1, 8, 8);
    oracle::rect_outline(img, 8, 8, 15, 15);
    return img;
}

// Three arms meeting at (cx, cy): one straight up, two diagonal down.
inline void draw_y(BinaryImage& img, int cx, int cy, int arm) {
    oracle::line(img, cx, cy, cx, cy - arm);
    oracle::line(img, cx, cy, cx - arm, cy + arm);
    oracle::line(img, cx, cy, cx + arm, cy + arm);
}

// A closed loop beside a curve carrying one spur: 1 loop, 3 endpoints,
// 1 branch point, 0 cross points.
inline BinaryImage loop_plus_spur() {
    BinaryImage img(32, 20, std::uint8_t{0});
    // A diamond: every loop pixel has exactly two 8-neighbours.
    oracle::line(img, 6, 2, 11, 7);
    oracle::line(img, 11, 7, 6, 12);
    oracle::line(img, 6, 12, 1, 7);
    oracle::line(img, 1, 7, 6, 2);
    draw_y(img, 21, 9, 6);
    return img;
}

// Two 1-pixel diagonals crossing at their midpoints.
inline BinaryImage diagonal_cross() {
    BinaryImage img(13, 13, std::uint8_t{0});
    oracle::line(img, 1, 1, 11, 11);
    oracle::line(img, 11, 1, 1, 11);
    return img;
}

// Upright plus of two 1-pixel strokes.
inline BinaryImage upright_plus() {
    BinaryImage img(13, 13, std::uint8_t{0});
    oracle::line(img, 1, 6, 11, 6);
    oracle::line(img, 6, 1, 6, 11);
    return img;
}

// T whose crossbar is split over the stem, as thinning leaves it.
inline BinaryImage minimal_t() {
    BinaryImage img(13, 12, std::uint8_t{0});
    oracle::line(img, 1, 2, 5, 2);
    oracle::line(img, 7, 2, 11, 2);
    oracle::line(img, 6, 3, 6, 10);
    return img;
}

// T drawn with a full crossbar.
inline BinaryImage full_t() {
    BinaryImage img(13, 12, std::uint8_t{0});
    oracle::line(img, 1, 2, 11, 2);
    oracle::line(img, 6, 3, 6, 10);
    return img;
}

// Random 1-pixel-thin images of at most max_side per side.
inline BinaryImage random_thin(glyphrec::Rng& rng, int max_side) {
    for (;;) {
        BinaryImage img = oracle::random_strokes(rng, max_side);
        if (oracle::strictly_thin(img)) return img;
    }
}

}  // namespace fixture
