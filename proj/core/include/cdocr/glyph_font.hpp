#pragma once

#include <map>
#include <string>

#include "cdocr/bitmap.hpp"

namespace cdocr {

// Fixed-pitch 25x16 bitmap face designed for compressed-domain reading.
// A glyph is built from 2x2 ink dots laid out on eight 3-row slots, plus a
// fixed registration frame:
//
//   row 0          bait streak, columns 0-3 (one run, no pass below it)
//   rows 3s+1,3s+2 slot s: anchor post at columns 4-5, then the letterform
//                  dots, seed column c at columns 8+2c..9+2c (c = 0..3)
//   rows 3s+3      blank, so each slot's run ends produce pass events there
//
// Width-two dots are the point of the design: a dot's left edge yields a
// vertical-mode event one row above and two columns left of its pass event,
// which is exactly the offset between the two modes' band anchors, so both
// modes read the same window cells. Onset rows (3s+1) only ever code
// horizontally and sit on rows the pass bands never sample. The bait streak
// pins the horizontal band's top and anchor away from both.
class GlyphFont {
public:
    static const GlyphFont& builtin();

    int cell_height() const { return 25; }
    int cell_width() const { return 16; }

    bool has(char symbol) const { return glyphs_.count(symbol) != 0; }
    const Bitmap& glyph(char symbol) const;  // throws RenderError{UnknownGlyph}
    const std::string& symbols() const { return symbols_; }

private:
    GlyphFont() = default;

    std::string symbols_;
    std::map<char, Bitmap> glyphs_;
};

}  // namespace cdocr
