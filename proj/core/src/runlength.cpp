#include "cdocr/runlength.hpp"

#include "cdocr/errors.hpp"

namespace cdocr {

RunLengthLine runlength_encode_line(std::span<const std::uint8_t> pixels) {
    RunLengthLine out;
    std::uint8_t color = 0;
    int run = 0;
    for (std::uint8_t px : pixels) {
        const std::uint8_t v = px ? 1 : 0;
        if (v == color) {
            ++run;
        } else {
            out.runs.push_back(run);
            color = v;
            run = 1;
        }
    }
    out.runs.push_back(run);
    return out;
}

std::vector<std::uint8_t> runlength_decode_line(const RunLengthLine& line, int width) {
    if (line.width() != width)
        throw DecodeError(DecodeError::Kind::SumMismatch, -1,
                          "run lengths sum to " + std::to_string(line.width()) +
                              ", line width is " + std::to_string(width));
    std::vector<std::uint8_t> pixels(width);
    int col = 0;
    std::uint8_t color = 0;
    for (int run : line.runs) {
        for (int i = 0; i < run; ++i) pixels[col++] = color;
        color ^= 1;
    }
    return pixels;
}

std::vector<int> changes_from_runs(const RunLengthLine& line) {
    // Prefix sums of all runs but the last; the final run ends at the line
    // width, which is not a change. A zero first run yields a change at 0.
    std::vector<int> changes;
    int col = 0;
    for (std::size_t i = 0; i + 1 < line.runs.size(); ++i) {
        col += line.runs[i];
        changes.push_back(col);
    }
    return changes;
}

RunLengthLine runs_from_changes(const std::vector<int>& changes, int width) {
    RunLengthLine out;
    int prev = 0;
    for (int c : changes) {
        out.runs.push_back(c - prev);
        prev = c;
    }
    out.runs.push_back(width - prev);
    return out;
}

std::vector<int> changes_from_pixels(std::span<const std::uint8_t> pixels) {
    std::vector<int> changes;
    std::uint8_t color = 0;
    for (std::size_t c = 0; c < pixels.size(); ++c) {
        const std::uint8_t v = pixels[c] ? 1 : 0;
        if (v != color) {
            changes.push_back(static_cast<int>(c));
            color = v;
        }
    }
    return changes;
}

std::vector<std::uint8_t> pixels_from_changes(const std::vector<int>& changes, int width) {
    std::vector<std::uint8_t> pixels(width, 0);
    for (std::size_t i = 0; i < changes.size(); i += 2) {
        const int from = changes[i];
        const int to = i + 1 < changes.size() ? changes[i + 1] : width;
        for (int c = from; c < to; ++c) pixels[c] = 1;
    }
    return pixels;
}

}  // namespace cdocr
