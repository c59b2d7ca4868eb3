#include "glyphrec/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "glyphrec/error.hpp"

namespace glyphrec {

namespace {

constexpr const char* kMagic = "glyphrec-model";
constexpr int kVersion = 1;

void check_name(std::string_view name) {
    if (name.empty() || name.find_first_of(" \t\n") != std::string_view::npos) {
        throw ConfigError("model field names must be non-empty and contain no whitespace");
    }
}

}  // namespace

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    // Shortest text that parses back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view token) {
    const std::string s(token);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw DataError("malformed real '" + s + "'");
    return v;
}

ModelWriter::ModelWriter(std::ostream& out, std::string_view kind) : out_(out) {
    out_ << kMagic << ' ' << kVersion << ' ' << kind << '\n';
}

void ModelWriter::integer(std::string_view name, std::int64_t value) {
    check_name(name);
    out_ << "int " << name << ' ' << value << '\n';
}

void ModelWriter::real(std::string_view name, double value) {
    check_name(name);
    out_ << "real " << name << ' ' << format_real(value) << '\n';
}

void ModelWriter::text(std::string_view name, std::string_view value) {
    check_name(name);
    if (value.find('\n') != std::string_view::npos) throw ConfigError("model text fields must be single-line");
    out_ << "text " << name << ' ' << value << '\n';
}

void ModelWriter::vector(std::string_view name, const Vector& v) {
    check_name(name);
    out_ << "vector " << name << ' ' << v.size() << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) out_ << (i ? " " : "") << format_real(v(i));
    out_ << '\n';
}

void ModelWriter::matrix(std::string_view name, const Matrix& m) {
    check_name(name);
    out_ << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out_ << (c ? " " : "") << format_real(m(r, c));
        out_ << '\n';
    }
}

namespace {

std::vector<double> read_reals(std::istream& in, Eigen::Index count, const std::string& field) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    std::string tok;
    for (Eigen::Index i = 0; i < count; ++i) {
        if (!(in >> tok)) throw DataError("model field '" + field + "' is truncated");
        values.push_back(parse_real(tok));
    }
    return values;
}

}  // namespace

ModelReader::ModelReader(std::istream& in, std::string_view expected_kind) {
    std::string magic, kind;
    int version = 0;
    if (!(in >> magic >> version >> kind) || magic != kMagic) throw DataError("not a glyphrec model file");
    if (version != kVersion) throw DataError("unsupported model version " + std::to_string(version));
    if (kind != expected_kind) {
        throw DataError("model kind mismatch: expected " + std::string(expected_kind) + ", found " + kind);
    }

    std::string type, name;
    while (in >> type) {
        if (!(in >> name)) throw DataError("model entry without a name");
        if (type == "int") {
            std::int64_t v;
            if (!(in >> v)) throw DataError("bad int field " + name);
            integers_[name] = v;
        } else if (type == "real") {
            std::string tok;
            in >> tok;
            reals_[name] = parse_real(tok);
        } else if (type == "text") {
            std::string rest;
            std::getline(in, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            texts_[name] = rest;
        } else if (type == "vector") {
            Eigen::Index n = 0;
            if (!(in >> n) || n < 0) throw DataError("bad vector header " + name);
            const auto vals = read_reals(in, n, name);
            vectors_[name] = Eigen::Map<const Vector>(vals.data(), n);
        } else if (type == "matrix") {
            Eigen::Index r = 0, c = 0;
            if (!(in >> r >> c) || r < 0 || c < 0) throw DataError("bad matrix header " + name);
            const auto vals = read_reals(in, r * c, name);
            matrices_[name] = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                vals.data(), r, c);
        } else {
            throw DataError("unknown model entry type '" + type + "'");
        }
    }
}

namespace {

template <typename Map>
const auto& lookup(const Map& m, const std::string& name) {
    auto it = m.find(name);
    if (it == m.end()) throw DataError("model field '" + name + "' missing");
    return it->second;
}

}  // namespace

std::int64_t ModelReader::integer(const std::string& name) const { return lookup(integers_, name); }
double ModelReader::real(const std::string& name) const { return lookup(reals_, name); }
const std::string& ModelReader::text(const std::string& name) const { return lookup(texts_, name); }
const Vector& ModelReader::vector(const std::string& name) const { return lookup(vectors_, name); }
const Matrix& ModelReader::matrix(const std::string& name) const { return lookup(matrices_, name); }

bool ModelReader::has(const std::string& name) const {
    return integers_.count(name) || reals_.count(name) || texts_.count(name) || vectors_.count(name) ||
           matrices_.count(name);
}

}  // namespace glyphrec
