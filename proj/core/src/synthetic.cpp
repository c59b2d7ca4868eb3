#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "glyphrec/corpus.hpp"
#include "glyphrec/rng.hpp"

namespace glyphrec {

namespace {

constexpr int kCanvas = 96;
constexpr int kCenter = kCanvas / 2;
constexpr std::uint8_t kInk = 20;
constexpr std::uint8_t kPaper = 235;

struct Point {
    double x;
    double y;
};

struct Stroke {
    std::vector<Point> points;
    bool closed = false;
};

struct Disc {
    Point center;
    double radius;
};

struct Shape {
    std::vector<Stroke> strokes;
    std::vector<Disc> discs;
};

constexpr std::array<const char*, 10> kTemplateNames = {
    "ring", "bar", "cross", "tjunction", "doublering", "ell", "scurve", "triangle", "disc", "zigzag"};

std::vector<Point> arc(Point c, double r, double from_deg, double to_deg, int steps) {
    std::vector<Point> pts;
    for (int i = 0; i <= steps; ++i) {
        const double t = (from_deg + (to_deg - from_deg) * i / steps) * std::numbers::pi / 180.0;
        pts.push_back({c.x + r * std::cos(t), c.y + r * std::sin(t)});
    }
    return pts;
}

Stroke circle(Point c, double r) {
    auto pts = arc(c, r, 0.0, 360.0, 64);
    pts.pop_back();
    return Stroke{std::move(pts), true};
}

// Template coordinates are centred on the canvas, y down.
Shape base_shape(int which) {
    switch (which) {
        case 0: return {{circle({0, 0}, 26)}, {}};
        case 1: return {{{{{0, -30}, {0, 30}}}}, {}};
        case 2: return {{{{{-28, 0}, {28, 0}}}, {{{0, -28}, {0, 28}}}}, {}};
        case 3: return {{{{{-26, -24}, {26, -24}}}, {{{0, -24}, {0, 30}}}}, {}};
        case 4: return {{circle({0, -15}, 14), circle({0, 15}, 14)}, {}};
        case 5: return {{{{{-18, -30}, {-18, 28}, {20, 28}}}}, {}};
        case 6: {
            Stroke s{arc({0, -14}, 14, -30, -270, 24)};
            auto lower = arc({0, 14}, 14, -90, 150, 24);
            s.points.insert(s.points.end(), lower.begin() + 1, lower.end());
            return {{s}, {}};
        }
        case 7: return {{{{{0, -28}, {28, 24}, {-28, 24}}, true}}, {}};
        case 8: return {{}, {{{0, 0}, 20}}};
        case 9: return {{{{{-28, -24}, {-14, 24}, {0, -24}, {14, 24}, {28, -24}}}}, {}};
    }
    return {};
}

struct Transform {
    double cos_t = 1.0;
    double sin_t = 0.0;
    double scale_x = 1.0;
    double scale_y = 1.0;
    int tx = 0;
    int ty = 0;

    std::array<int, 2> apply(Point p) const {
        const double x = p.x * scale_x;
        const double y = p.y * scale_y;
        const double rx = cos_t * x - sin_t * y;
        const double ry = sin_t * x + cos_t * y;
        return {kCenter + tx + static_cast<int>(std::lround(rx)), kCenter + ty + static_cast<int>(std::lround(ry))};
    }
};

class Canvas {
public:
    explicit Canvas(int stroke_width) : img_(kCanvas, kCanvas, kPaper), width_(stroke_width) {}

    void stamp(int x, int y) {
        const int lo = -(width_ - 1) / 2;
        const int hi = width_ / 2;
        for (int dy = lo; dy <= hi; ++dy) {
            for (int dx = lo; dx <= hi; ++dx) {
                if (img_.contains(x + dx, y + dy)) img_.at(x + dx, y + dy) = kInk;
            }
        }
    }

    // Integer Bresenham.
    void line(std::array<int, 2> a, std::array<int, 2> b) {
        int x0 = a[0], y0 = a[1];
        const int x1 = b[0], y1 = b[1];
        const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            stamp(x0, y0);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    void disc(std::array<int, 2> c, int r) {
        for (int y = c[1] - r; y <= c[1] + r; ++y) {
            for (int x = c[0] - r; x <= c[0] + r; ++x) {
                const int dx = x - c[0], dy = y - c[1];
                if (dx * dx + dy * dy <= r * r && img_.contains(x, y)) img_.at(x, y) = kInk;
            }
        }
    }

    ByteImage& image() { return img_; }

private:
    ByteImage img_;
    int width_;
};

ByteImage render(const Shape& shape, const Transform& tf, int stroke_width) {
    Canvas canvas(stroke_width);
    for (const Stroke& s : shape.strokes) {
        const std::size_t n = s.points.size();
        for (std::size_t i = 0; i + 1 < n; ++i) canvas.line(tf.apply(s.points[i]), tf.apply(s.points[i + 1]));
        if (s.closed && n > 2) canvas.line(tf.apply(s.points[n - 1]), tf.apply(s.points[0]));
        if (n == 1) canvas.stamp(tf.apply(s.points[0])[0], tf.apply(s.points[0])[1]);
    }
    for (const Disc& d : shape.discs) {
        const double r = d.radius * std::sqrt(tf.scale_x * tf.scale_y);
        canvas.disc(tf.apply(d.center), static_cast<int>(std::lround(r)));
    }
    return std::move(canvas.image());
}

// Variant c >= 1 of a template is squeezed horizontally by 1 / (1 + 0.5c)
// and turned by 45c degrees, so cycled classes stay distinguishable.
Transform variant_transform(int class_index) {
    const int cycle = class_index / static_cast<int>(kTemplateNames.size());
    Transform tf;
    if (cycle == 0) return tf;
    const double angle = 45.0 * cycle * std::numbers::pi / 180.0;
    tf.cos_t = std::cos(angle);
    tf.sin_t = std::sin(angle);
    tf.scale_x = 1.0 / (1.0 + 0.5 * cycle);
    return tf;
}

std::string class_name(int class_index) {
    const int n = static_cast<int>(kTemplateNames.size());
    std::string name = kTemplateNames[static_cast<std::size_t>(class_index % n)];
    if (class_index >= n) name += "_v" + std::to_string(class_index / n);
    return name;
}

void validate(const SyntheticSpec& spec) {
    const Distortion& d = spec.distortion;
    if (spec.class_count < 2) throw ConfigError("synthetic: class_count must be >= 2");
    if (spec.samples_per_class < 1) throw ConfigError("synthetic: samples_per_class must be positive");
    if (d.rotation_max_deg < 0.0) throw ConfigError("synthetic: rotation_max_deg must be >= 0");
    if (d.scale_jitter < 0.0 || d.scale_jitter > 0.5) throw ConfigError("synthetic: scale_jitter must be in [0, 0.5]");
    if (d.translate_max_px < 0) throw ConfigError("synthetic: translate_max_px must be >= 0");
    if (d.noise_flip_prob < 0.0 || d.noise_flip_prob > 0.2) {
        throw ConfigError("synthetic: noise_flip_prob must be in [0, 0.2]");
    }
    if (d.stroke_width_px < 1) throw ConfigError("synthetic: stroke_width_px must be >= 1");
}

}  // namespace

Distortion default_distortion() {
    return Distortion{12.0, 0.15, 6, 0.02, 4};
}

std::span<const char* const> template_names() { return kTemplateNames; }

ByteImage render_template(int class_index, int stroke_width_px) {
    if (class_index < 0) throw ConfigError("render_template: negative class index");
    const int n = static_cast<int>(kTemplateNames.size());
    return render(base_shape(class_index % n), variant_transform(class_index), stroke_width_px);
}

Corpus generate_synthetic(const SyntheticSpec& spec) {
    validate(spec);
    const Distortion& d = spec.distortion;
    const int n_templates = static_cast<int>(kTemplateNames.size());

    Rng rng(spec.seed);
    std::vector<GlyphSample> samples;
    std::vector<std::string> names;
    samples.reserve(static_cast<std::size_t>(spec.class_count) * static_cast<std::size_t>(spec.samples_per_class));
    for (int c = 0; c < spec.class_count; ++c) {
        names.push_back(class_name(c));
        const Shape shape = base_shape(c % n_templates);
        const Transform variant = variant_transform(c);
        for (int i = 0; i < spec.samples_per_class; ++i) {
            const double angle = rng.uniform(-d.rotation_max_deg, d.rotation_max_deg) * std::numbers::pi / 180.0;
            const double scale = 1.0 + rng.uniform(-d.scale_jitter, d.scale_jitter);
            const int tx = rng.between(-d.translate_max_px, d.translate_max_px);
            const int ty = rng.between(-d.translate_max_px, d.translate_max_px);

            // Compose the sample rotation with the variant's own rotation.
            Transform tf = variant;
            const double c0 = std::cos(angle), s0 = std::sin(angle);
            tf.cos_t = c0 * variant.cos_t - s0 * variant.sin_t;
            tf.sin_t = s0 * variant.cos_t + c0 * variant.sin_t;
            tf.scale_x *= scale;
            tf.scale_y *= scale;
            tf.tx = tx;
            tf.ty = ty;

            ByteImage img = render(shape, tf, d.stroke_width_px);
            if (d.noise_flip_prob > 0.0) {
                for (auto& px : img.pixels()) {
                    if (rng.bernoulli(d.noise_flip_prob)) px = (px == kInk) ? kPaper : kInk;
                }
            }
            char id[32];
            std::snprintf(id, sizeof id, "_%05d", i);
            samples.push_back(GlyphSample{std::move(img), c, names.back() + id});
        }
    }
    return Corpus(std::move(samples), std::move(names));
}

}  // namespace glyphrec
