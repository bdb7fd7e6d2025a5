#pragma once

#include <stdexcept>
#include <string>

namespace cdocr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bit-level decode failures. `row` is the zero-based scan line being decoded
// when the failure was detected, or -1 when no line applies.
class DecodeError : public Error {
public:
    enum class Kind {
        InvalidCode,   // accumulated bits match no codeword
        Overrun,       // decoded positions run past the line width
        Truncated,     // bit stream ended mid-codeword
        SumMismatch,   // run lengths do not add up to the line width
    };

    DecodeError(Kind kind, int row, const std::string& what)
        : Error(what), kind(kind), row(row) {}

    Kind kind;
    int row;
};

class TiffError : public Error {
public:
    enum class Kind {
        BadMagic,
        TruncatedIfd,
        UnsupportedCompression,  // also raised for non-bilevel pixel layouts
        PageOutOfRange,
    };

    TiffError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

    Kind kind;
};

class FeatureError : public Error {
public:
    enum class Kind {
        No2DModes,   // input stream carries no 2D-coded lines
    };

    FeatureError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

    Kind kind;
};

class ModelError : public Error {
public:
    enum class Kind {
        MissingSymbol,      // no training sample for an alphabet symbol
        EmptyCorpus,        // corpus text contains no usable word
        DimensionMismatch,  // observation size differs from model cells
        BadFile,            // model file malformed
    };

    ModelError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

    Kind kind;
};

class RenderError : public Error {
public:
    enum class Kind {
        UnknownGlyph,
        BadSpec,
    };

    RenderError(Kind kind, const std::string& what) : Error(what), kind(kind) {}

    Kind kind;
};

}  // namespace cdocr
