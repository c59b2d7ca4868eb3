#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "glyphrec/error.hpp"

namespace glyphrec {

// Row-major 2-D raster. Coordinates are (x, y) with x the column.
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height) {
        if (width <= 0 || height <= 0) {
            throw ShapeError("raster dimensions must be positive");
        }
        pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }
    Raster(int width, int height, std::vector<T> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels)) {
        if (width <= 0 || height <= 0 ||
            pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw ShapeError("raster pixel count does not match width*height");
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    T& at(int x, int y) { return pixels_[index(x, y)]; }
    const T& at(int x, int y) const { return pixels_[index(x, y)]; }

    // Out-of-range reads return `outside`.
    T get_or(int x, int y, T outside) const {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return outside;
        return pixels_[index(x, y)];
    }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    const std::vector<T>& pixels() const { return pixels_; }
    std::vector<T>& pixels() { return pixels_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> pixels_;
};

// Real-valued intensities.
using GrayImage = Raster<double>;

// 8-bit intensities as stored on disk (0 = black, 255 = white).
using ByteImage = Raster<std::uint8_t>;

// 1 = foreground (ink), 0 = background.
using BinaryImage = Raster<std::uint8_t>;

// Output of thinning. Kept as a distinct type so topological counters only
// accept thinned rasters.
class Skeleton {
public:
    Skeleton() = default;
    explicit Skeleton(BinaryImage image) : image_(std::move(image)) {}

    const BinaryImage& image() const { return image_; }
    int width() const { return image_.width(); }
    int height() const { return image_.height(); }
    bool at(int x, int y) const { return image_.at(x, y) != 0; }

    friend bool operator==(const Skeleton&, const Skeleton&) = default;

private:
    BinaryImage image_;
};

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    friend bool operator==(const Rect&, const Rect&) = default;
};

std::size_t count_foreground(const BinaryImage& img);

template <typename T>
Raster<T> crop(const Raster<T>& img, const Rect& r) {
    if (r.w <= 0 || r.h <= 0 || r.x < 0 || r.y < 0 || r.x + r.w > img.width() ||
        r.y + r.h > img.height()) {
        throw ShapeError("crop rectangle outside image bounds");
    }
    Raster<T> out(r.w, r.h);
    for (int y = 0; y < r.h; ++y) {
        for (int x = 0; x < r.w; ++x) out.at(x, y) = img.at(r.x + x, r.y + y);
    }
    return out;
}

GrayImage to_gray(const ByteImage& img);

}  // namespace glyphrec
