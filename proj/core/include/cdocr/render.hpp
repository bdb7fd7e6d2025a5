#pragma once

#include <string>
#include <vector>

#include "cdocr/bitmap.hpp"
#include "cdocr/glyph_font.hpp"

namespace cdocr {

// A page is a list of text lines set in the fixed-pitch face. Spacing
// defaults keep lines and words separable by the profile segmenter: with a
// 25-row cell and 15 blank rows between cells, the inter-line gap seen by
// mode events stays well above any gap inside a cell, and a 16-column space
// advance leaves a feature gap wider than any intra-word one.
struct PageSpec {
    std::vector<std::string> lines;
    int line_spacing = 15;  // blank rows between glyph cells
    int word_spacing = 16;  // horizontal advance of one space character
    int margin = 16;        // white border on all four sides
};

struct CharBox {
    char symbol = 0;
    int row0 = 0, row1 = 0;  // glyph cell bounds, half-open
    int col0 = 0, col1 = 0;
};

struct PageTruth {
    std::vector<std::string> lines;
    std::vector<int> line_tops;                // top row of each line's cells
    std::vector<std::vector<CharBox>> boxes;   // non-space characters per line
    int width = 0;
    int height = 0;
};

struct RenderResult {
    Bitmap page;
    PageTruth truth;
};

// Throws RenderError: UnknownGlyph for characters outside the face, BadSpec
// for an empty line, leading or trailing spaces, or non-positive spacing.
// A spec with no lines renders as bare margins rather than erroring.
RenderResult render_page(const PageSpec& spec, const GlyphFont& font = GlyphFont::builtin());

// Page spec files are plain text: one page line per text line.
PageSpec read_page_spec_file(const std::string& path);
void write_truth_file(const std::string& path, const PageTruth& truth);
std::vector<std::string> read_truth_file(const std::string& path);

}  // namespace cdocr
