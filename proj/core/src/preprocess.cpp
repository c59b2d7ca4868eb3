#include "glyphrec/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace glyphrec {

std::size_t count_foreground(const BinaryImage& img) {
    return static_cast<std::size_t>(std::count_if(img.pixels().begin(), img.pixels().end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

GrayImage to_gray(const ByteImage& img) {
    GrayImage out(img.width(), img.height());
    std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(),
                   [](std::uint8_t v) { return static_cast<double>(v); });
    return out;
}

namespace {

int histogram_bin(double v) {
    const double r = std::round(v);
    if (!(r > 0.0)) return 0;
    if (r >= 255.0) return 255;
    return static_cast<int>(r);
}

}  // namespace

int otsu_threshold(const GrayImage& img) {
    std::array<double, 256> hist{};
    for (double v : img.pixels()) hist[static_cast<std::size_t>(histogram_bin(v))] += 1.0;

    const double total = static_cast<double>(img.size());
    double sum_all = 0.0;
    for (int i = 0; i < 256; ++i) sum_all += i * hist[static_cast<std::size_t>(i)];

    double best = -1.0;
    int best_t = -1;
    double w0 = 0.0;
    double sum0 = 0.0;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[static_cast<std::size_t>(t)];
        sum0 += t * hist[static_cast<std::size_t>(t)];
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

BinaryImage binarize(const GrayImage& img) {
    if (img.empty()) throw ShapeError("binarize: empty image");
    BinaryImage out(img.width(), img.height(), 0);
    const int t = otsu_threshold(img);
    if (t < 0) return out;

    std::size_t dark = 0;
    for (double v : img.pixels()) dark += histogram_bin(v) <= t ? 1 : 0;
    const bool dark_is_ink = 2 * dark <= img.size();
    for (std::size_t i = 0; i < img.size(); ++i) {
        const bool is_dark = histogram_bin(img.pixels()[i]) <= t;
        out.pixels()[i] = (is_dark == dark_is_ink) ? 1 : 0;
    }
    return out;
}

Rect bounding_box(const BinaryImage& img) {
    int x0 = img.width(), y0 = img.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (!img.at(x, y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) throw EmptyGlyphError("empty glyph: no foreground pixels");
    return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

double catmull_rom(double t) {
    constexpr double a = -0.5;
    t = std::abs(t);
    if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
    if (t < 2.0) return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
    return 0.0;
}

namespace {

struct Tap {
    std::array<int, 4> index;
    std::array<double, 4> weight;
};

// Source taps for every output coordinate along one axis.
std::vector<Tap> cubic_taps(int in, int out) {
    std::vector<Tap> taps(static_cast<std::size_t>(out));
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    for (int o = 0; o < out; ++o) {
        const double src = (o + 0.5) * scale - 0.5;
        const double base = std::floor(src);
        const double frac = src - base;
        Tap& tap = taps[static_cast<std::size_t>(o)];
        for (int k = 0; k < 4; ++k) {
            const int i = static_cast<int>(base) + k - 1;
            tap.index[static_cast<std::size_t>(k)] = std::clamp(i, 0, in - 1);
            tap.weight[static_cast<std::size_t>(k)] = catmull_rom(frac - (k - 1));
        }
    }
    return taps;
}

}  // namespace

GrayImage resize_bicubic(const GrayImage& img, int side) {
    if (side < 2) throw ConfigError("resize_bicubic: side must be >= 2");
    const auto tx = cubic_taps(img.width(), side);
    const auto ty = cubic_taps(img.height(), side);

    // Horizontal pass into a side x height buffer, then vertical.
    GrayImage mid(side, img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < side; ++x) {
            const Tap& t = tx[static_cast<std::size_t>(x)];
            double acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += t.weight[k] * img.at(t.index[k], y);
            mid.at(x, y) = acc;
        }
    }
    GrayImage out(side, side);
    for (int y = 0; y < side; ++y) {
        const Tap& t = ty[static_cast<std::size_t>(y)];
        for (int x = 0; x < side; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += t.weight[k] * mid.at(x, t.index[k]);
            out.at(x, y) = acc;
        }
    }
    return out;
}

BinaryImage resize_nearest(const BinaryImage& img, int side) {
    if (side < 1) throw ConfigError("resize_nearest: side must be positive");
    BinaryImage out(side, side);
    for (int y = 0; y < side; ++y) {
        const int sy = std::min(img.height() - 1, static_cast<int>((y + 0.5) * img.height() / side));
        for (int x = 0; x < side; ++x) {
            const int sx = std::min(img.width() - 1, static_cast<int>((x + 0.5) * img.width() / side));
            out.at(x, y) = img.at(sx, sy);
        }
    }
    return out;
}

GrayImage normalize_zero_mean(const GrayImage& img) {
    if (img.empty()) throw ShapeError("normalize_zero_mean: empty image");
    const double mean = std::accumulate(img.pixels().begin(), img.pixels().end(), 0.0) /
                        static_cast<double>(img.size());
    GrayImage out = img;
    for (double& v : out.pixels()) v -= mean;
    return out;
}

GrayImage gaussian_smooth_3x3(const GrayImage& img) {
    if (img.width() < 3 || img.height() < 3) {
        throw ShapeError("gaussian_smooth_3x3: image must be at least 3x3");
    }
    static constexpr double kWeights[3][3] = {{1, 2, 1}, {2, 4, 2}, {1, 2, 1}};
    const int w = img.width();
    const int h = img.height();
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int sy = std::clamp(y + dy, 0, h - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sx = std::clamp(x + dx, 0, w - 1);
                    acc += kWeights[dy + 1][dx + 1] * img.at(sx, sy);
                }
            }
            out.at(x, y) = acc / 16.0;
        }
    }
    return out;
}

namespace {

// P2..P9: N, NE, E, SE, S, SW, W, NW.
constexpr std::array<int, 8> kDx = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kDy = {-1, -1, 0, 1, 1, 1, 0, -1};

bool zhang_suen_deletable(const BinaryImage& img, int x, int y, int pass) {
    std::array<int, 8> p{};
    int b = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        p[k] = img.get_or(x + kDx[k], y + kDy[k], 0) ? 1 : 0;
        b += p[k];
    }
    if (b < 2 || b > 6) return false;
    int a = 0;
    for (std::size_t k = 0; k < 8; ++k) a += (p[k] == 0 && p[(k + 1) % 8] == 1) ? 1 : 0;
    if (a != 1) return false;
    const int p2 = p[0], p4 = p[2], p6 = p[4], p8 = p[6];
    if (pass == 0) return p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0;
    return p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0;
}

// Yokoi 8-connectivity number; a pixel whose number is 1 can be removed
// without changing foreground 8- or background 4-connectivity.
int connectivity_number(const BinaryImage& img, int x, int y) {
    // E, NE, N, NW, W, SW, S, SE.
    static constexpr std::array<int, 8> ex = {1, 1, 0, -1, -1, -1, 0, 1};
    static constexpr std::array<int, 8> ey = {0, -1, -1, -1, 0, 1, 1, 1};
    std::array<int, 9> bg{};
    for (std::size_t k = 0; k < 8; ++k) bg[k] = img.get_or(x + ex[k], y + ey[k], 0) ? 0 : 1;
    bg[8] = bg[0];
    int n = 0;
    for (std::size_t k = 0; k < 8; k += 2) n += bg[k] - bg[k] * bg[k + 1] * bg[(k + 2) % 8];
    return n;
}

int neighbor_count(const BinaryImage& img, int x, int y) {
    int n = 0;
    for (std::size_t k = 0; k < 8; ++k) n += img.get_or(x + kDx[k], y + kDy[k], 0) ? 1 : 0;
    return n;
}

// Raster-order removal of simple, non-end pixels left over by the parallel
// thinning (staircase corners, 2x2 blocks).
void remove_redundant_pixels(BinaryImage& img) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                if (!img.at(x, y) || neighbor_count(img, x, y) < 2) continue;
                if (connectivity_number(img, x, y) == 1) {
                    img.at(x, y) = 0;
                    changed = true;
                }
            }
        }
    }
}

}  // namespace

Skeleton skeletonize(const BinaryImage& img) {
    if (img.empty()) throw ShapeError("skeletonize: empty image");
    BinaryImage cur = img;
    for (auto& v : cur.pixels()) v = v ? 1 : 0;

    std::vector<std::size_t> marked;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            marked.clear();
            for (int y = 0; y < cur.height(); ++y) {
                for (int x = 0; x < cur.width(); ++x) {
                    if (cur.at(x, y) && zhang_suen_deletable(cur, x, y, pass)) {
                        marked.push_back(static_cast<std::size_t>(y) * static_cast<std::size_t>(cur.width()) +
                                         static_cast<std::size_t>(x));
                    }
                }
            }
            for (std::size_t i : marked) cur.pixels()[i] = 0;
            changed = changed || !marked.empty();
        }
    }
    remove_redundant_pixels(cur);
    return Skeleton(std::move(cur));
}

bool is_thin(const BinaryImage& img) {
    for (int y = 0; y + 1 < img.height(); ++y) {
        for (int x = 0; x + 1 < img.width(); ++x) {
            if (img.at(x, y) && img.at(x + 1, y) && img.at(x, y + 1) && img.at(x + 1, y + 1)) return false;
        }
    }
    return true;
}

Preprocessed preprocess_chain(const GrayImage& raw) {
    if (raw.empty()) throw ShapeError("preprocess_chain: empty image");
    const BinaryImage bin = binarize(raw);
    const Rect box = bounding_box(bin);

    Preprocessed out;
    out.aspect_ratio = static_cast<double>(box.w) / static_cast<double>(box.h);
    out.gray = gaussian_smooth_3x3(normalize_zero_mean(resize_bicubic(crop(raw, box), kNormalizedSide)));
    out.binary = resize_nearest(crop(bin, box), kNormalizedSide);
    out.skeleton = skeletonize(out.binary);
    return out;
}

}  // namespace glyphrec
