#include "glyphrec/feature_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "glyphrec/error.hpp"
#include "glyphrec/model_io.hpp"

namespace glyphrec {

int FeatureTable::class_count() const {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

FeatureTable FeatureTable::select_rows(const std::vector<std::size_t>& rows) const {
    FeatureTable out;
    out.columns = columns;
    out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t r = rows[i];
        if (r >= sample_ids.size()) throw ShapeError("select_rows: row index out of range");
        out.sample_ids.push_back(sample_ids[r]);
        out.labels.push_back(labels[r]);
        out.values.row(static_cast<Eigen::Index>(i)) = values.row(static_cast<Eigen::Index>(r));
    }
    return out;
}

Matrix FeatureTable::select_columns(const std::vector<std::size_t>& global) const {
    std::unordered_map<std::size_t, Eigen::Index> where;
    for (std::size_t j = 0; j < columns.size(); ++j) where[columns[j]] = static_cast<Eigen::Index>(j);
    Matrix out(values.rows(), static_cast<Eigen::Index>(global.size()));
    for (std::size_t j = 0; j < global.size(); ++j) {
        auto it = where.find(global[j]);
        if (it == where.end()) throw ShapeError("feature column f" + std::to_string(global[j]) + " not in table");
        out.col(static_cast<Eigen::Index>(j)) = values.col(it->second);
    }
    return out;
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
    if (table.values.rows() != static_cast<Eigen::Index>(table.rows()) ||
        table.values.cols() != static_cast<Eigen::Index>(table.columns.size()) ||
        table.labels.size() != table.rows()) {
        throw ShapeError("write_feature_csv: inconsistent table");
    }
    out << "sample_id,label";
    for (std::size_t c : table.columns) out << ",f" << c;
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        out << quote(table.sample_ids[i]) << ',' << table.labels[i];
        for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
            out << ',' << format_real(table.values(static_cast<Eigen::Index>(i), j));
        }
        out << '\n';
    }
}

FeatureTable read_feature_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("feature CSV is empty");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "sample_id" || header[1] != "label") {
        throw DataError("feature CSV header must start with sample_id,label");
    }
    FeatureTable t;
    for (std::size_t j = 2; j < header.size(); ++j) {
        const std::string& h = header[j];
        if (h.size() < 2 || h[0] != 'f') throw DataError("bad feature column name '" + h + "'");
        try {
            t.columns.push_back(static_cast<std::size_t>(std::stoul(h.substr(1))));
        } catch (const std::exception&) {
            throw DataError("bad feature column name '" + h + "'");
        }
    }

    std::vector<double> flat;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw DataError("feature CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields");
        }
        t.sample_ids.push_back(fields[0]);
        try {
            t.labels.push_back(std::stoi(fields[1]));
        } catch (const std::exception&) {
            throw DataError("feature CSV line " + std::to_string(line_no) + ": bad label");
        }
        if (t.labels.back() < 0) throw DataError("feature CSV line " + std::to_string(line_no) + ": negative label");
        for (std::size_t j = 2; j < fields.size(); ++j) flat.push_back(parse_real(fields[j]));
    }
    const auto rows = static_cast<Eigen::Index>(t.sample_ids.size());
    const auto cols = static_cast<Eigen::Index>(t.columns.size());
    t.values = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        flat.data(), rows, cols);
    return t;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_feature_csv(out, table);
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_feature_csv(in);
}

}  // namespace glyphrec
