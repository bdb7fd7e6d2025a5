#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cdocr/features.hpp"

namespace cdocr {

struct ProjectionProfile {
    enum class Axis { Rows, Columns };
    Axis axis{};
    std::vector<int> counts;

    bool operator==(const ProjectionProfile&) const = default;
};

ProjectionProfile horizontal_profile(const FeatureGrid& grid);  // per-row counts
ProjectionProfile vertical_profile(const FeatureGrid& grid);    // per-column counts

enum class BandKind : std::uint8_t { Line, Word, Character };

// Half-open [start, end) interval of rows (lines) or columns (words, chars).
struct Band {
    int start = 0;
    int end = 0;
    BandKind kind{};

    bool operator==(const Band&) const = default;
};

struct SegmentParams {
    int min_line_gap = 3;   // empty rows that terminate a line band
    int min_line_mass = 2;  // events a line band needs to survive
    int min_word_gap = 8;   // empty columns that terminate a word band
    int cell_width = 16;    // fixed character pitch in columns
};

// Line bands from the row profile: nonzero stretches, bridging zero runs
// shorter than min_gap, discarding bands with fewer than min_mass events.
std::vector<Band> segment_lines(const FeatureGrid& grid, int min_gap = 3, int min_mass = 2);

// Word bands from the column profile restricted to the line's rows.
std::vector<Band> segment_words(const FeatureGrid& grid, const Band& line, int min_gap = 8);

// Fixed-pitch character cells anchored at the word's first occupied column;
// the final cell may be narrower. Column occupancy is taken across the whole
// grid, so a band wider than the occupied span re-anchors correctly.
std::vector<Band> segment_chars(const FeatureGrid& grid, const Band& word,
                                int cell_width = 16);

struct WordSegment {
    Band cols;
    std::vector<Band> chars;

    bool operator==(const WordSegment&) const = default;
};

struct LineSegment {
    Band rows;
    std::vector<WordSegment> words;

    bool operator==(const LineSegment&) const = default;
};

struct PageSegmentation {
    std::vector<LineSegment> lines;

    bool operator==(const PageSegmentation&) const = default;
};

PageSegmentation segment_page(const FeatureGrid& grid, const SegmentParams& params = {});

// Text form: one record per line, word, and char:
//   LINE r0 r1
//   WORD r0 r1 c0 c1
//   CHAR r0 r1 c0 c1
// where r0/r1 are the owning line's rows and intervals are half-open.
void write_segmentation(std::ostream& out, const PageSegmentation& seg);
PageSegmentation read_segmentation(std::istream& in);
void write_segmentation_file(const std::string& path, const PageSegmentation& seg);

}  // namespace cdocr
