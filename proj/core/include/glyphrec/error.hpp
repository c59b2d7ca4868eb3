#pragma once

#include <stdexcept>
#include <string>

namespace glyphrec {

// Base of every error raised by the library. The CLI maps the concrete
// subclass onto its exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters: k out of range, non-divisor zone grid, empty class.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Dimension or raster-size mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Problems with input data: missing paths, empty corpora, blank glyphs,
// malformed files.
class DataError : public Error {
public:
    using Error::Error;
};

class EmptyGlyphError : public DataError {
public:
    using DataError::DataError;
};

// A numerical routine failed to produce a usable result.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace glyphrec
