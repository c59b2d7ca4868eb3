#pragma once

#include "glyphrec/raster.hpp"

namespace glyphrec {

inline constexpr int kNormalizedSide = 64;

// Otsu threshold on the 256-bin histogram of `img` (values rounded and
// clamped to 0..255). Pixels <= threshold form the dark class. Returns -1
// when the histogram has a single occupied bin.
int otsu_threshold(const GrayImage& img);

// Foreground is whichever side of the Otsu threshold holds fewer pixels
// (ink is sparse); on an exact tie the dark side wins. A constant image is
// all background.
BinaryImage binarize(const GrayImage& img);

// Tightest rectangle around the foreground. Throws EmptyGlyphError when
// there is none.
Rect bounding_box(const BinaryImage& img);

// Catmull-Rom cubic (a = -0.5) resampling to side x side with edge clamping.
// Pixel centers map as src = (dst + 0.5) * in / out - 0.5.
GrayImage resize_bicubic(const GrayImage& img, int side);

// Catmull-Rom kernel weight at distance t.
double catmull_rom(double t);

BinaryImage resize_nearest(const BinaryImage& img, int side);

GrayImage normalize_zero_mean(const GrayImage& img);

// (1/16)[[1,2,1],[2,4,2],[1,2,1]] with replicated borders. Throws ShapeError
// below 3x3.
GrayImage gaussian_smooth_3x3(const GrayImage& img);

// Zhang-Suen thinning iterated to a fixed point, followed by a raster-order
// sweep that deletes simple (8-connectivity number 1) non-end pixels until
// none remain. Pixels outside the image count as background.
Skeleton skeletonize(const BinaryImage& img);

// No foreground pixel sits inside a fully-foreground 2x2 square.
bool is_thin(const BinaryImage& img);

struct Preprocessed {
    GrayImage gray;      // 64x64, zero mean, smoothed
    BinaryImage binary;  // 64x64
    Skeleton skeleton;   // 64x64
    double aspect_ratio = 1.0;  // w/h of the bounding box before resizing
};

// binarize -> bounding box -> crop -> resize (bicubic gray, nearest binary)
// -> zero-mean -> smooth (gray) / skeletonize (binary).
Preprocessed preprocess_chain(const GrayImage& raw);

}  // namespace glyphrec
