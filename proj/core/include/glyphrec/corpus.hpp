#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glyphrec/raster.hpp"

namespace glyphrec {

struct GlyphSample {
    ByteImage image;  // 0 = black ink, 255 = white paper
    int label = 0;
    std::string sample_id;
};

// An immutable labeled image collection. Labels index class_names.
class Corpus {
public:
    Corpus() = default;
    Corpus(std::vector<GlyphSample> samples, std::vector<std::string> class_names);

    const std::vector<GlyphSample>& samples() const { return samples_; }
    const std::vector<std::string>& class_names() const { return class_names_; }
    int class_count() const { return static_cast<int>(class_names_.size()); }
    std::size_t size() const { return samples_.size(); }

    std::vector<int> labels() const;
    std::vector<std::size_t> class_populations() const;

private:
    std::vector<GlyphSample> samples_;
    std::vector<std::string> class_names_;
};

struct SplitSpec {
    int train_per_class = 150;
    int test_per_class = 50;
    std::uint64_t seed = 0;
};

struct Distortion {
    double rotation_max_deg = 0.0;
    double scale_jitter = 0.0;     // [0, 0.5]
    int translate_max_px = 0;
    double noise_flip_prob = 0.0;  // [0, 0.2]
    int stroke_width_px = 4;
};

struct SyntheticSpec {
    int class_count = 10;
    int samples_per_class = 130;
    std::uint64_t seed = 0;
    Distortion distortion;
};

// The distortion used by the benchmark corpus in tests and the CLI default.
Distortion default_distortion();

struct LoadReport {
    Corpus corpus;
    std::vector<std::string> warnings;  // one line per unreadable file
    std::vector<std::filesystem::path> paths;  // parallel to corpus.samples()
};

// One subdirectory per class, sorted lexicographically to assign labels.
// Files with extensions .png, .pgm are read; others are ignored.
LoadReport load_directory(const std::filesystem::path& root);

Corpus generate_synthetic(const SyntheticSpec& spec);

// Names of the built-in template shapes, indexed by class modulo their count.
std::span<const char* const> template_names();

// Renders a single undistorted template on the 96x96 canvas.
ByteImage render_template(int class_index, int stroke_width_px);

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Per class, draws train_per_class + test_per_class distinct members; both
// output index lists are shuffled. Throws ConfigError naming the first class
// whose population is too small.
SplitIndices stratified_indices(std::span<const int> labels, int class_count, const SplitSpec& spec);

std::pair<Corpus, Corpus> split_stratified(const Corpus& corpus, const SplitSpec& spec);

// CSV with header sample_id,label,class_name,path.
void write_manifest(const std::filesystem::path& file, const Corpus& corpus,
                    std::span<const std::filesystem::path> paths);

// Writes <out>/<label>_<class_name>/<sample_id>.png plus <out>/manifest.csv.
void save_corpus(const std::filesystem::path& out, const Corpus& corpus);

}  // namespace glyphrec
