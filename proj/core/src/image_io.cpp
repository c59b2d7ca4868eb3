#include "glyphrec/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace glyphrec {

namespace {

ByteImage read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw DataError("cannot read PNG " + path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_GRAY;
    if (image.width == 0 || image.height == 0) {
        png_image_free(&image);
        throw DataError("empty PNG " + path.string());
    }
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw DataError("cannot decode PNG " + path.string() + ": " + msg);
    }
    return ByteImage(static_cast<int>(image.width), static_cast<int>(image.height), std::move(buffer));
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

ByteImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    if (pnm_token(in) != "P5") throw DataError("not a binary PGM (P5): " + path.string());
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(pnm_token(in));
        h = std::stoi(pnm_token(in));
        maxval = std::stoi(pnm_token(in));
    } catch (const std::exception&) {
        throw DataError("malformed PGM header: " + path.string());
    }
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
        throw DataError("unsupported PGM geometry or depth: " + path.string());
    }
    std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
    if (in.gcount() != static_cast<std::streamsize>(px.size())) {
        throw DataError("truncated PGM: " + path.string());
    }
    if (maxval != 255) {
        for (auto& v : px) v = static_cast<std::uint8_t>(std::min(255, v * 255 / maxval));
    }
    return ByteImage(w, h, std::move(px));
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

ByteImage read_gray_image(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") return read_png(path);
    if (ext == ".pgm") return read_pgm(path);
    throw DataError("unsupported image format: " + path.string());
}

void write_png(const std::filesystem::path& path, const ByteImage& img) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, img.pixels().data(), 0, nullptr)) {
        throw DataError("cannot write PNG " + path.string() + ": " + image.message);
    }
}

void write_pgm(const std::filesystem::path& path, const ByteImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.size()));
}

void dump_pgm(const std::filesystem::path& path, const GrayImage& img) {
    const auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
    const double span = *hi - *lo;
    ByteImage out(img.width(), img.height(), 0);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double v = span > 0.0 ? (img.pixels()[i] - *lo) * 255.0 / span : 0.0;
        out.pixels()[i] = static_cast<std::uint8_t>(std::clamp(v + 0.5, 0.0, 255.0));
    }
    write_pgm(path, out);
}

void dump_binary_pgm(const std::filesystem::path& path, const BinaryImage& img) {
    ByteImage out(img.width(), img.height(), 255);
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (img.pixels()[i]) out.pixels()[i] = 0;
    }
    write_pgm(path, out);
}

}  // namespace glyphrec
