#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace cdocr {

// Alternating run lengths of one scan line, starting with white. A leading
// zero encodes a line that begins with black. Runs after the first are
// strictly positive; the sum of all runs equals the line width.
struct RunLengthLine {
    std::vector<int> runs;

    int width() const { return std::accumulate(runs.begin(), runs.end(), 0); }

    bool operator==(const RunLengthLine&) const = default;
};

RunLengthLine runlength_encode_line(std::span<const std::uint8_t> pixels);

// Throws DecodeError{SumMismatch} when the runs do not sum to `width`.
std::vector<std::uint8_t> runlength_decode_line(const RunLengthLine& line, int width);

// Positions where the pixel color changes, in ascending order. Even indices
// are white-to-black changes, odd are black-to-white; a line starting black
// has its first change at column 0.
std::vector<int> changes_from_runs(const RunLengthLine& line);
RunLengthLine runs_from_changes(const std::vector<int>& changes, int width);
std::vector<int> changes_from_pixels(std::span<const std::uint8_t> pixels);
std::vector<std::uint8_t> pixels_from_changes(const std::vector<int>& changes, int width);

}  // namespace cdocr
