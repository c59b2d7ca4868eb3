#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "glyphrec/linalg.hpp"

namespace glyphrec {

// Flat text format shared by every saved model:
//
//   glyphrec-model 1 <kind>
//   int <name> <value>
//   real <name> <value>
//   text <name> <rest of line>
//   vector <name> <n>
//   <n reals on one line>
//   matrix <name> <rows> <cols>
//   <one line per row>
//
// Reals are written in shortest round-trip form; infinities as "inf".
class ModelWriter {
public:
    ModelWriter(std::ostream& out, std::string_view kind);

    void integer(std::string_view name, std::int64_t value);
    void real(std::string_view name, double value);
    void text(std::string_view name, std::string_view value);
    void vector(std::string_view name, const Vector& v);
    void matrix(std::string_view name, const Matrix& m);

private:
    std::ostream& out_;
};

class ModelReader {
public:
    // Throws DataError on malformed input or a kind mismatch.
    ModelReader(std::istream& in, std::string_view expected_kind);

    std::int64_t integer(const std::string& name) const;
    double real(const std::string& name) const;
    const std::string& text(const std::string& name) const;
    const Vector& vector(const std::string& name) const;
    const Matrix& matrix(const std::string& name) const;
    bool has(const std::string& name) const;

private:
    std::map<std::string, std::int64_t> integers_;
    std::map<std::string, double> reals_;
    std::map<std::string, std::string> texts_;
    std::map<std::string, Vector> vectors_;
    std::map<std::string, Matrix> matrices_;
};

std::string format_real(double v);
double parse_real(std::string_view token);

}  // namespace glyphrec
