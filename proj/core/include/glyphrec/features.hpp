#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glyphrec/preprocess.hpp"
#include "glyphrec/raster.hpp"

namespace glyphrec {

struct TopoFeatures {
    int loops = 0;
    int endpoints = 0;
    int branch_points = 0;
    int cross_points = 0;
    double aspect_ratio = 1.0;
};

// Holes: 4-connected background components of the image padded with one
// background ring, minus the outer one.
int count_loops(const Skeleton& skel);

// Number of foreground 8-neighbours of (x, y); out-of-image is background.
int foreground_neighbors(const BinaryImage& img, int x, int y);

int count_endpoints(const Skeleton& skel);
int count_branch_points(const Skeleton& skel);
int count_cross_points(const Skeleton& skel);

TopoFeatures topo_features(const Skeleton& skel, double aspect_ratio);

struct ZoneFeatures {
    int grid = 8;
    std::vector<double> sums;  // grid*grid, row-major zone order
};

ZoneFeatures zone_features(const BinaryImage& bin, int grid);

struct TransitionVector {
    std::vector<double> horizontal;  // NT_h per row
    std::vector<double> vertical;    // NT_v per column
};

// Foreground-to-background transitions per scan line, with a virtual
// background pixel past the end of each line, divided by the number of scan
// lines.
TransitionVector transition_features(const BinaryImage& bin);

// LBP_{8,1}: bit k is set when neighbour k >= center; neighbours run
// clockwise from the top-left, bit 0 is the most significant.
int lbp_code(const GrayImage& gray, int x, int y);

struct LbpProfile {
    static constexpr int P = 8;
    static constexpr int R = 1;
    std::vector<double> row_profile;  // 64 entries
    std::vector<double> col_profile;  // 64 entries
};

// Row and column sums of the LBP code image (border codes 0), divided by
// 64 * 255.
LbpProfile lbp_profile(const GrayImage& gray);

enum class FeatureSet { topo, zones, transitions, lbp, combined };

struct Segment {
    std::size_t begin;
    std::size_t end;
    std::size_t size() const { return end - begin; }
};

inline constexpr std::size_t kTopoDim = 5;
inline constexpr int kZoneGrid = 8;
inline constexpr std::size_t kZoneDim = kZoneGrid * kZoneGrid;
inline constexpr std::size_t kTransitionDim = 2 * kNormalizedSide;
inline constexpr std::size_t kLbpDim = 2 * kNormalizedSide;
inline constexpr std::size_t kFeatureDim = kTopoDim + kZoneDim + kTransitionDim + kLbpDim;

Segment segment_of(FeatureSet set);
std::string_view to_string(FeatureSet set);
FeatureSet parse_feature_set(std::string_view name);

// Sorted, de-duplicated global column indices covered by the given sets.
std::vector<std::size_t> feature_columns(std::span<const FeatureSet> sets);

struct FeatureVector {
    std::array<double, kFeatureDim> values{};
};

// Layout: [0,5) topology, [5,69) zones, [69,197) transitions (rows, then
// columns), [197,325) LBP profile (rows, then columns).
FeatureVector extract_all(const Preprocessed& pre);

}  // namespace glyphrec
