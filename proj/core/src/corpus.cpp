#include "glyphrec/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

#include "glyphrec/image_io.hpp"
#include "glyphrec/rng.hpp"

namespace fs = std::filesystem;

namespace glyphrec {

Corpus::Corpus(std::vector<GlyphSample> samples, std::vector<std::string> class_names)
    : samples_(std::move(samples)), class_names_(std::move(class_names)) {
    if (class_names_.empty()) throw DataError("corpus has no classes");
    std::set<std::string> ids;
    for (const auto& s : samples_) {
        if (s.label < 0 || s.label >= class_count()) {
            throw DataError("sample " + s.sample_id + " has label outside the class range");
        }
        if (s.image.width() < 8 || s.image.height() < 8) {
            throw DataError("sample " + s.sample_id + " is smaller than 8x8");
        }
        if (!ids.insert(s.sample_id).second) throw DataError("duplicate sample_id " + s.sample_id);
    }
}

std::vector<int> Corpus::labels() const {
    std::vector<int> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.label);
    return out;
}

std::vector<std::size_t> Corpus::class_populations() const {
    std::vector<std::size_t> pop(class_names_.size(), 0);
    for (const auto& s : samples_) ++pop[static_cast<std::size_t>(s.label)];
    return pop;
}

LoadReport load_directory(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw DataError("corpus root not found: " + root.string());

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path());
    }
    if (class_dirs.empty()) throw DataError("empty corpus: no class subdirectories in " + root.string());
    std::sort(class_dirs.begin(), class_dirs.end());

    LoadReport report;
    std::vector<GlyphSample> samples;
    std::vector<std::string> names;
    for (std::size_t label = 0; label < class_dirs.size(); ++label) {
        const fs::path& dir = class_dirs[label];
        names.push_back(dir.filename().string());

        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
            if (ext == ".png" || ext == ".pgm") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());

        for (const auto& file : files) {
            try {
                ByteImage img = read_gray_image(file);
                if (img.width() < 8 || img.height() < 8) {
                    report.warnings.push_back(file.string() + ": smaller than 8x8, skipped");
                    continue;
                }
                samples.push_back(GlyphSample{std::move(img), static_cast<int>(label),
                                              names.back() + "/" + file.stem().string()});
                report.paths.push_back(file);
            } catch (const DataError& e) {
                report.warnings.push_back(e.what());
            }
        }
    }
    report.corpus = Corpus(std::move(samples), std::move(names));
    return report;
}

SplitIndices stratified_indices(std::span<const int> labels, int class_count, const SplitSpec& spec) {
    if (spec.train_per_class <= 0 || spec.test_per_class <= 0) {
        throw ConfigError("split: train_per_class and test_per_class must be positive");
    }
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(class_count));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int l = labels[i];
        if (l < 0 || l >= class_count) throw ConfigError("split: label out of range");
        members[static_cast<std::size_t>(l)].push_back(i);
    }
    const auto need = static_cast<std::size_t>(spec.train_per_class + spec.test_per_class);
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (members[c].size() < need) {
            throw ConfigError("split: class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                              " samples, needs " + std::to_string(need));
        }
    }

    Rng rng(spec.seed);
    SplitIndices out;
    for (auto& m : members) {
        rng.shuffle(std::span<std::size_t>(m));
        out.train.insert(out.train.end(), m.begin(), m.begin() + spec.train_per_class);
        out.test.insert(out.test.end(), m.begin() + spec.train_per_class, m.begin() + static_cast<std::ptrdiff_t>(need));
    }
    rng.shuffle(std::span<std::size_t>(out.train));
    rng.shuffle(std::span<std::size_t>(out.test));
    return out;
}

std::pair<Corpus, Corpus> split_stratified(const Corpus& corpus, const SplitSpec& spec) {
    const std::vector<int> labels = corpus.labels();
    const SplitIndices idx = stratified_indices(labels, corpus.class_count(), spec);
    auto gather = [&](const std::vector<std::size_t>& rows) {
        std::vector<GlyphSample> s;
        s.reserve(rows.size());
        for (std::size_t i : rows) s.push_back(corpus.samples()[i]);
        return Corpus(std::move(s), corpus.class_names());
    };
    return {gather(idx.train), gather(idx.test)};
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

void write_manifest(const fs::path& file, const Corpus& corpus, std::span<const fs::path> paths) {
    if (paths.size() != corpus.size()) throw ShapeError("manifest: one path per sample required");
    std::ofstream out(file);
    if (!out) throw DataError("cannot write " + file.string());
    out << "sample_id,label,class_name,path\n";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GlyphSample& s = corpus.samples()[i];
        out << csv_field(s.sample_id) << ',' << s.label << ','
            << csv_field(corpus.class_names()[static_cast<std::size_t>(s.label)]) << ','
            << csv_field(paths[i].generic_string()) << '\n';
    }
}

void save_corpus(const fs::path& out, const Corpus& corpus) {
    fs::create_directories(out);
    std::vector<fs::path> paths;
    paths.reserve(corpus.size());
    for (const GlyphSample& s : corpus.samples()) {
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%03d_", s.label);
        const fs::path dir = out / (prefix + corpus.class_names()[static_cast<std::size_t>(s.label)]);
        fs::create_directories(dir);
        std::string stem = s.sample_id;
        std::replace(stem.begin(), stem.end(), '/', '_');
        const fs::path file = dir / (stem + ".png");
        write_png(file, s.image);
        paths.push_back(fs::relative(file, out));
    }
    write_manifest(out / "manifest.csv", corpus, paths);
}

}  // namespace glyphrec
