#pragma once

#include <cstdint>
#include <optional>

namespace cdocr::t4 {

// A codeword's bits live in the low `length` bits of `value`, most
// significant bit transmitted first.
struct Codeword {
    std::uint16_t value;
    std::uint8_t length;

    bool operator==(const Codeword&) const = default;
};

inline constexpr Codeword kEol{0x001, 12};
inline constexpr int kMaxMakeupRun = 2560;
inline constexpr int kMaxRunCodeBits = 13;
inline constexpr int kMax2dCodeBits = 7;

// Run-length codewords (ITU-T T.4 tables 2, 3a, 3b).
Codeword terminating_code(bool black, int run);  // run in [0, 63]
Codeword makeup_code(bool black, int run);       // run in {64, 128, ..., 2560}

struct RunMatch {
    int run;
    bool terminating;  // make-up codes prefix another run codeword
};
std::optional<RunMatch> match_run(bool black, std::uint32_t value, int length);

// Two-dimensional coding mode codewords (ITU-T T.4 table 4 / T.6).
Codeword pass_code();
Codeword horizontal_code();
Codeword vertical_code(int offset);  // offset in [-3, 3], a1 relative to b1

struct Match2D {
    enum class Kind { Pass, Horizontal, Vertical };
    Kind kind;
    int offset;  // meaningful for Vertical only
};
std::optional<Match2D> match_2d(std::uint32_t value, int length);

}  // namespace cdocr::t4
