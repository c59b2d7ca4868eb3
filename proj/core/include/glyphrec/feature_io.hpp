#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "glyphrec/linalg.hpp"

namespace glyphrec {

// One row per sample. `columns` holds the global feature index of each
// matrix column, so a table of a subset of segments still knows its layout.
struct FeatureTable {
    std::vector<std::string> sample_ids;
    std::vector<int> labels;
    std::vector<std::size_t> columns;
    Matrix values;

    std::size_t rows() const { return sample_ids.size(); }
    int class_count() const;  // max label + 1

    FeatureTable select_rows(const std::vector<std::size_t>& rows) const;
    // Keeps the listed global feature indices; throws ShapeError if absent.
    Matrix select_columns(const std::vector<std::size_t>& global) const;
};

// Header: sample_id,label,f<i>... ; reals in shortest round-trip form.
void write_feature_csv(std::ostream& out, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in);

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);
FeatureTable read_feature_csv(const std::filesystem::path& path);

}  // namespace glyphrec
