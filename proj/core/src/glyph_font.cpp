#include "cdocr/glyph_font.hpp"

#include <cstring>

#include "cdocr/errors.hpp"

namespace cdocr {
namespace {

// 4x8 dot-matrix seeds. Each '#' becomes a detached 2x2 ink dot; shapes are
// free-form apart from two rules: seeds are pairwise distinct, and every
// seed has a dot in one of its two right columns so a glyph's feature span
// always reaches far enough to bridge to the next cell.
struct Seed {
    char symbol;
    const char* rows[8];
};

constexpr Seed kSeeds[] = {
    {'a', {"....", ".##.", "...#", ".###", "#..#", "#..#", ".###", "...."}},
    {'b', {"#...", "#...", "###.", "#..#", "#..#", "#..#", "###.", "...."}},
    {'c', {"....", ".##.", "#..#", "#...", "#...", "#..#", ".##.", "...."}},
    {'d', {"....", "...#", ".###", "#..#", "#..#", "#..#", ".###", "...."}},
    {'e', {"....", ".##.", "#..#", "####", "#...", "#..#", ".##.", "...."}},
    {'f', {"..#.", ".#..", "###.", ".#..", ".#..", ".#..", ".#..", "...."}},
    {'g', {"....", ".###", "#..#", "#..#", ".###", "...#", "#..#", ".##."}},
    {'h', {"#...", "#...", "###.", "#..#", "#..#", "#..#", "#..#", "...."}},
    {'i', {"..#.", "....", ".##.", "..#.", "..#.", "..#.", ".###", "...."}},
    {'j', {"....", "...#", "..##", "...#", "...#", "...#", "#..#", ".##."}},
    {'k', {"#...", "#...", "#..#", "#.#.", "##..", "#.#.", "#..#", "...."}},
    {'l', {".##.", "..#.", "..#.", "..#.", "..#.", "..#.", ".###", "...."}},
    {'m', {"....", "....", "####", "#.##", "#..#", "#..#", "#..#", "...."}},
    {'n', {"....", "....", "###.", "#..#", "#..#", "#..#", "#..#", "...."}},
    {'o', {"....", "....", ".##.", "#..#", "#..#", "#..#", ".##.", "...."}},
    {'p', {"....", "###.", "#..#", "#..#", "###.", "#...", "#...", "#..."}},
    {'q', {"....", ".###", "#..#", "#..#", ".###", "...#", "...#", "...#"}},
    {'r', {"....", "....", "#.##", "##..", "#...", "#...", "#...", "...."}},
    {'s', {"....", ".###", "#...", ".##.", "...#", "...#", "###.", "...."}},
    {'t', {".#..", ".#..", "####", ".#..", ".#..", ".#..", "..##", "...."}},
    {'u', {"....", "....", "#..#", "#..#", "#..#", "#..#", ".###", "...."}},
    {'v', {"....", "....", "#..#", "#..#", "#..#", ".##.", "..#.", "...."}},
    {'w', {"....", "....", "#..#", "#..#", "####", "####", "#..#", "...."}},
    {'x', {"....", "....", "#..#", ".##.", "..#.", ".##.", "#..#", "...."}},
    {'y', {"....", "....", "#..#", "#..#", "#..#", ".###", "...#", ".##."}},
    {'z', {"....", "....", "####", "...#", ".##.", "#...", "####", "...."}},
    {'A', {".##.", "#..#", "#..#", "####", "#..#", "#..#", "#..#", "...."}},
    {'B', {"###.", "#..#", "#..#", "###.", "#..#", "#..#", "###.", "...."}},
    {'C', {".##.", "#..#", "#...", "#...", "#...", "#..#", ".##.", "...."}},
    {'D', {"###.", "#..#", "#..#", "#..#", "#..#", "#..#", "###.", "...."}},
    {'E', {"###.", "#...", "#...", "###.", "#...", "#...", "####", "...."}},
    {'F', {"###.", "#...", "#...", "###.", "#...", "#...", "#...", "...."}},
    {'G', {".##.", "#...", "#...", "#.##", "#..#", "#..#", ".###", "...."}},
    {'H', {"#...", "#..#", "#..#", "####", "#..#", "#..#", "#..#", "...."}},
    {'I', {"###.", ".#..", ".#..", ".#..", ".#..", ".#..", "###.", "...."}},
    {'J', {"..#.", "...#", "...#", "...#", "...#", "#..#", ".##.", "...."}},
    {'K', {"#...", "#..#", "#.#.", "##..", "#.#.", "#..#", "#..#", "...."}},
    {'L', {"#...", "#...", "#...", "#...", "#...", "#...", "####", "...."}},
    {'M', {"#...", "####", "####", "#..#", "#..#", "#..#", "#..#", "...."}},
    {'N', {"#...", "##.#", "##.#", "#.##", "#.##", "#..#", "#..#", "...."}},
    {'O', {".##.", "#..#", "#..#", "#..#", "#..#", "#..#", ".##.", "...."}},
    {'P', {"###.", "#..#", "#..#", "###.", "#...", "#...", "#...", "...."}},
    {'Q', {".##.", "#..#", "#..#", "#..#", "#.##", "#..#", ".###", "...."}},
    {'R', {"###.", "#..#", "#..#", "###.", "#.#.", "#..#", "#..#", "...."}},
    {'S', {".##.", "#...", "#...", ".##.", "...#", "...#", "###.", "...."}},
    {'T', {"###.", ".#..", ".#..", ".#..", ".#..", ".#..", ".#..", "...."}},
    {'U', {"#...", "#..#", "#..#", "#..#", "#..#", "#..#", ".##.", "...."}},
    {'V', {"#...", "#..#", "#..#", "#..#", "#..#", ".##.", "..#.", "...."}},
    {'W', {"#...", "#..#", "#..#", "#..#", "####", "####", "#..#", "...."}},
    {'X', {"#...", "#..#", ".##.", "..#.", ".##.", "#..#", "#..#", "...."}},
    {'Y', {"#...", "#..#", ".##.", "..#.", "..#.", "..#.", "..#.", "...."}},
    {'Z', {"###.", "...#", "..#.", ".#..", "#...", "#...", "####", "...."}},
    {'0', {".##.", "#..#", "#.##", "##.#", "#..#", "#..#", ".##.", "...."}},
    {'1', {"..#.", ".##.", "..#.", "..#.", "..#.", "..#.", ".###", "...."}},
    {'2', {".##.", "#..#", "...#", "..#.", ".#..", "#...", "####", "...."}},
    {'3', {"###.", "...#", ".##.", "...#", "...#", "#..#", ".##.", "...."}},
    {'4', {"..#.", "..##", ".#.#", "#..#", "####", "...#", "...#", "...."}},
    {'5', {"###.", "#...", "###.", "...#", "...#", "#..#", ".##.", "...."}},
    {'6', {".##.", "#...", "#...", "###.", "#..#", "#..#", ".##.", "...."}},
    {'7', {"###.", "...#", "..#.", "..#.", ".#..", ".#..", ".#..", "...."}},
    {'8', {".##.", "#..#", "#..#", ".##.", "#..#", "#..#", ".##.", "...."}},
    {'9', {".##.", "#..#", "#..#", ".###", "...#", "...#", ".##.", "...."}},
    {'(', {"..#.", ".#..", "#...", "#...", "#...", ".#..", "..#.", "...."}},
    {')', {".#..", "..#.", "...#", "...#", "...#", "..#.", ".#..", "...."}},
    {'.', {"....", "....", "....", "....", "....", ".##.", ".##.", "...."}},
    {',', {"....", "....", "....", "....", ".##.", ".##.", "..#.", ".#.."}},
    {'!', {"..#.", "..#.", "..#.", "..#.", "..#.", "....", "..#.", "...."}},
    {'?', {".##.", "#..#", "...#", "..#.", "..#.", "....", "..#.", "...."}},
    {'"', {"#.#.", "#.#.", "....", "....", "....", "....", "....", "...."}},
};

// Cell geometry. Eight 3-row slots: slot s inks rows 3s+1 and 3s+2, row 3s+3
// stays blank so every run end on row 3s+2 becomes a pass event below it.
constexpr int kCellH = 25;
constexpr int kCellW = 16;
constexpr int kBaitEnd = 4;   // row 0 streak [0, 4)
constexpr int kPostL = 4;     // post [4, 6) in every slot
constexpr int kPostR = 6;
constexpr int kDotBase = 8;   // seed column c inks [8+2c, 10+2c)

void fill(Bitmap& b, int r0, int r1, int c0, int c1) {
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) b.set(r, c, true);
}

Bitmap compose_glyph(const Seed& seed) {
    Bitmap cell(kCellW, kCellH);

    // Bait streak: a lone run whose only job is to start the horizontal-mode
    // band at row 0, column 0. Its end touches the post column below, which
    // keeps it from ever producing a pass event.
    fill(cell, 0, 0, 0, kBaitEnd - 1);

    bool right_covered = false;
    for (int s = 0; s < 8; ++s) {
        const int r0 = 3 * s + 1;
        // Post: the anchor. Width two makes its left-edge vertical event and
        // its pass event land on the same cell of a band-aligned window.
        fill(cell, r0, r0 + 1, kPostL, kPostR - 1);

        const char* row = seed.rows[s];
        if (std::strlen(row) != 4) throw RenderError(RenderError::Kind::BadSpec, "bad seed row");
        for (int c = 0; c < 4; ++c) {
            if (row[c] != '#') continue;
            fill(cell, r0, r0 + 1, kDotBase + 2 * c, kDotBase + 2 * c + 1);
            right_covered = right_covered || c >= 2;
        }
    }
    if (!right_covered)
        throw RenderError(RenderError::Kind::BadSpec, "seed leaves right columns empty");
    return cell;
}

}  // namespace

const GlyphFont& GlyphFont::builtin() {
    static const GlyphFont font = [] {
        GlyphFont f;
        for (const Seed& seed : kSeeds) {
            f.symbols_ += seed.symbol;
            f.glyphs_.emplace(seed.symbol, compose_glyph(seed));
        }
        for (const auto& [a, ga] : f.glyphs_)
            for (const auto& [b, gb] : f.glyphs_)
                if (a < b && ga == gb)
                    throw RenderError(RenderError::Kind::BadSpec,
                                      std::string("glyphs '") + a + "' and '" + b + "' coincide");
        return f;
    }();
    return font;
}

const Bitmap& GlyphFont::glyph(char symbol) const {
    auto it = glyphs_.find(symbol);
    if (it == glyphs_.end())
        throw RenderError(RenderError::Kind::UnknownGlyph,
                          std::string("no glyph for symbol '") + symbol + "'");
    return it->second;
}

}  // namespace cdocr
