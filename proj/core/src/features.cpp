#include "glyphrec/features.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace glyphrec {

int count_loops(const Skeleton& skel) {
    // Flood the background of a one-pixel-padded copy, 4-connected.
    const int w = skel.width() + 2;
    const int h = skel.height() + 2;
    if (skel.width() == 0) return 0;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
    auto background = [&](int x, int y) {
        if (x == 0 || y == 0 || x == w - 1 || y == h - 1) return true;
        return !skel.at(x - 1, y - 1);
    };
    auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };

    int components = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (seen[idx(x, y)] || !background(x, y)) continue;
            ++components;
            seen[idx(x, y)] = 1;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                constexpr std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
                for (auto [dx, dy] : steps) {
                    const int nx = cx + dx, ny = cy + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    if (seen[idx(nx, ny)] || !background(nx, ny)) continue;
                    seen[idx(nx, ny)] = 1;
                    stack.emplace_back(nx, ny);
                }
            }
        }
    }
    return components - 1;
}

int foreground_neighbors(const BinaryImage& img, int x, int y) {
    int n = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if ((dx || dy) && img.get_or(x + dx, y + dy, 0)) ++n;
        }
    }
    return n;
}

namespace {

int count_with_neighbors(const Skeleton& skel, int wanted) {
    const BinaryImage& img = skel.image();
    int n = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.at(x, y) && foreground_neighbors(img, x, y) == wanted) ++n;
        }
    }
    return n;
}

}  // namespace

int count_endpoints(const Skeleton& skel) { return count_with_neighbors(skel, 1); }
int count_branch_points(const Skeleton& skel) { return count_with_neighbors(skel, 3); }
int count_cross_points(const Skeleton& skel) { return count_with_neighbors(skel, 4); }

TopoFeatures topo_features(const Skeleton& skel, double aspect_ratio) {
    return TopoFeatures{count_loops(skel), count_endpoints(skel), count_branch_points(skel),
                        count_cross_points(skel), aspect_ratio};
}

ZoneFeatures zone_features(const BinaryImage& bin, int grid) {
    if (bin.width() != kNormalizedSide || bin.height() != kNormalizedSide) {
        throw ShapeError("zone_features: expected a 64x64 image");
    }
    if (grid <= 0 || kNormalizedSide % grid != 0) {
        throw ConfigError("zone_features: grid must divide 64");
    }
    const int cell = kNormalizedSide / grid;
    ZoneFeatures z{grid, std::vector<double>(static_cast<std::size_t>(grid * grid), 0.0)};
    for (int y = 0; y < kNormalizedSide; ++y) {
        for (int x = 0; x < kNormalizedSide; ++x) {
            if (bin.at(x, y)) z.sums[static_cast<std::size_t>((y / cell) * grid + x / cell)] += 1.0;
        }
    }
    return z;
}

TransitionVector transition_features(const BinaryImage& bin) {
    if (bin.width() != kNormalizedSide || bin.height() != kNormalizedSide) {
        throw ShapeError("transition_features: expected a 64x64 image");
    }
    constexpr double n = kNormalizedSide;
    TransitionVector tv{std::vector<double>(kNormalizedSide, 0.0), std::vector<double>(kNormalizedSide, 0.0)};
    for (int i = 0; i < kNormalizedSide; ++i) {
        int row = 0;
        int col = 0;
        for (int k = 0; k < kNormalizedSide; ++k) {
            if (bin.at(k, i) && !bin.get_or(k + 1, i, 0)) ++row;
            if (bin.at(i, k) && !bin.get_or(i, k + 1, 0)) ++col;
        }
        tv.horizontal[static_cast<std::size_t>(i)] = row / n;
        tv.vertical[static_cast<std::size_t>(i)] = col / n;
    }
    return tv;
}

int lbp_code(const GrayImage& gray, int x, int y) {
    if (x < 1 || y < 1 || x >= gray.width() - 1 || y >= gray.height() - 1) {
        throw ConfigError("lbp_code: pixel must be interior");
    }
    // Clockwise from the top-left.
    static constexpr std::array<int, 8> dx = {-1, 0, 1, 1, 1, 0, -1, -1};
    static constexpr std::array<int, 8> dy = {-1, -1, -1, 0, 1, 1, 1, 0};
    const double center = gray.at(x, y);
    int code = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        code = (code << 1) | (gray.at(x + dx[k], y + dy[k]) >= center ? 1 : 0);
    }
    return code;
}

LbpProfile lbp_profile(const GrayImage& gray) {
    if (gray.width() != kNormalizedSide || gray.height() != kNormalizedSide) {
        throw ShapeError("lbp_profile: expected a 64x64 image");
    }
    std::vector<long> rows(kNormalizedSide, 0), cols(kNormalizedSide, 0);
    for (int y = 1; y < kNormalizedSide - 1; ++y) {
        for (int x = 1; x < kNormalizedSide - 1; ++x) {
            const int code = lbp_code(gray, x, y);
            rows[static_cast<std::size_t>(y)] += code;
            cols[static_cast<std::size_t>(x)] += code;
        }
    }
    constexpr double denom = kNormalizedSide * 255.0;
    LbpProfile p;
    p.row_profile.resize(kNormalizedSide);
    p.col_profile.resize(kNormalizedSide);
    for (std::size_t i = 0; i < kNormalizedSide; ++i) {
        p.row_profile[i] = static_cast<double>(rows[i]) / denom;
        p.col_profile[i] = static_cast<double>(cols[i]) / denom;
    }
    return p;
}

Segment segment_of(FeatureSet set) {
    constexpr std::size_t zones = kTopoDim;
    constexpr std::size_t transitions = zones + kZoneDim;
    constexpr std::size_t lbp = transitions + kTransitionDim;
    switch (set) {
        case FeatureSet::topo: return {0, zones};
        case FeatureSet::zones: return {zones, transitions};
        case FeatureSet::transitions: return {transitions, lbp};
        case FeatureSet::lbp: return {lbp, kFeatureDim};
        case FeatureSet::combined: return {0, kFeatureDim};
    }
    throw ConfigError("unknown feature set");
}

std::string_view to_string(FeatureSet set) {
    switch (set) {
        case FeatureSet::topo: return "topo";
        case FeatureSet::zones: return "zones";
        case FeatureSet::transitions: return "transitions";
        case FeatureSet::lbp: return "lbp";
        case FeatureSet::combined: return "combined";
    }
    return "?";
}

FeatureSet parse_feature_set(std::string_view name) {
    for (FeatureSet s : {FeatureSet::topo, FeatureSet::zones, FeatureSet::transitions, FeatureSet::lbp,
                         FeatureSet::combined}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("unknown feature set '" + std::string(name) + "'");
}

std::vector<std::size_t> feature_columns(std::span<const FeatureSet> sets) {
    std::vector<std::size_t> cols;
    for (FeatureSet s : sets) {
        const Segment seg = segment_of(s);
        for (std::size_t i = seg.begin; i < seg.end; ++i) cols.push_back(i);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

FeatureVector extract_all(const Preprocessed& pre) {
    FeatureVector fv;
    auto out = fv.values.begin();

    const TopoFeatures topo = topo_features(pre.skeleton, pre.aspect_ratio);
    *out++ = topo.loops;
    *out++ = topo.endpoints;
    *out++ = topo.branch_points;
    *out++ = topo.cross_points;
    *out++ = topo.aspect_ratio;

    const ZoneFeatures zones = zone_features(pre.binary, kZoneGrid);
    out = std::copy(zones.sums.begin(), zones.sums.end(), out);

    const TransitionVector tc = transition_features(pre.binary);
    out = std::copy(tc.horizontal.begin(), tc.horizontal.end(), out);
    out = std::copy(tc.vertical.begin(), tc.vertical.end(), out);

    const LbpProfile lbp = lbp_profile(pre.gray);
    out = std::copy(lbp.row_profile.begin(), lbp.row_profile.end(), out);
    std::copy(lbp.col_profile.begin(), lbp.col_profile.end(), out);
    return fv;
}

}  // namespace glyphrec
