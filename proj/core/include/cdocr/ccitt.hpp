#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "cdocr/bitio.hpp"
#include "cdocr/bitmap.hpp"
#include "cdocr/runlength.hpp"

namespace cdocr {

enum class SchemeKind : std::uint8_t {
    G3_1D,  // modified Huffman, every line coded independently
    G3_2D,  // modified READ, every k-th line coded 1D for resync
    G4,     // modified modified READ, all lines 2D
};

struct CodingScheme {
    SchemeKind kind = SchemeKind::G4;
    int k = 2;  // G3_2D only: period of 1D-coded lines

    bool operator==(const CodingScheme&) const = default;
};

struct CompressedPage {
    std::vector<std::uint8_t> data;
    CodingScheme scheme;
    int width = 0;
    int height = 0;
    FillOrder fill_order = FillOrder::MsbFirst;
    bool eol_present = false;  // G3: an EOL codeword precedes every line
    bool invert = false;       // flip decoded pixel sense (BlackIsZero sources)

    // Strip layout. Strip s codes rows [s * rows_per_strip, ...) and its
    // bytes start at strip_offsets[s] within data; every strip restarts the
    // coder with an all-white reference line. Empty strip_offsets means a
    // single strip covering the whole page.
    int rows_per_strip = 0;
    std::vector<std::size_t> strip_offsets;
};

struct StripView {
    int row0;
    int row1;
    std::span<const std::uint8_t> bytes;
};
std::vector<StripView> strips_of(const CompressedPage& page);

enum class ModeKind : std::uint8_t { Pass, Vertical, Horizontal };

// One codeword of a 2D-coded line, as chosen by the encoder.
struct CodingMode {
    ModeKind kind;
    int vertical_offset = 0;  // a1 - b1 for vertical mode, in [-3, 3]
    int run1 = 0;             // horizontal mode: run a0..a1 (a0 color)
    int run2 = 0;             // horizontal mode: run a1..a2 (opposite color)

    bool operator==(const CodingMode&) const = default;
};

// A 2D codeword pinned to the page location that witnesses it. Pass mode is
// located at b2, vertical and horizontal at a1.
struct ModeEvent {
    int row;
    int col;
    ModeKind mode;

    auto operator<=>(const ModeEvent&) const = default;
};

using EventSink = std::function<void(const ModeEvent&)>;

// Changing elements around the current coding position. Positions that do
// not exist hold the sentinel `width`; a0 is -1 at line start (imaginary
// white element before the first pixel).
struct CodingState {
    int a0;
    bool a0_black;  // color of the pixel run beginning at a0
    int a1;
    int a2;
    int b1;
    int b2;
    int width;
};

// Mode selection exactly as the encoder applies it: pass when b2 lies left
// of a1, else vertical when |a1 - b1| <= 3, else horizontal.
CodingMode classify_mode(const CodingState& st);

// --- line-level coding -----------------------------------------------------
//
// Change lists hold ascending change positions; even indices change to black
// (see runlength.hpp). `row` only labels errors and events.

void mh_encode_line(BitWriter& bw, const RunLengthLine& line);
RunLengthLine mh_decode_line(BitReader& br, int width, int row = -1);

// Returns the codeword sequence. Events for in-bounds columns go to `sink`.
std::vector<CodingMode> g2d_encode_line(BitWriter& bw, const std::vector<int>& coding,
                                        const std::vector<int>& reference, int width,
                                        int row = -1, const EventSink* sink = nullptr);

std::vector<int> g2d_decode_line(BitReader& br, const std::vector<int>& reference,
                                 int width, int row = -1, const EventSink* sink = nullptr);

// Raster-row convenience wrappers over the change-list forms.
std::vector<CodingMode> g2d_encode_line(BitWriter& bw, std::span<const std::uint8_t> coding,
                                        std::span<const std::uint8_t> reference, int width,
                                        int row = -1, const EventSink* sink = nullptr);
std::vector<std::uint8_t> g2d_decode_line(BitReader& br,
                                          std::span<const std::uint8_t> reference, int width,
                                          int row = -1, const EventSink* sink = nullptr);

// EOL = eleven or more zero bits followed by a one (zero fill is legal).
void write_eol(BitWriter& bw);
void expect_eol(BitReader& br, int row);

// --- page-level coding -----------------------------------------------------

// G3 schemes honor eol_present; G4 never carries EOL. For G3_2D every line is
// preceded by a tag bit (1 = 1D, 0 = 2D) whether or not EOLs are present, and
// lines at row % k == 0 are 1D-coded. G3_1D without EOL byte-aligns each row.
// The sink observes events of 2D-coded lines exactly as decode_page would
// report them.
CompressedPage encode_page(const Bitmap& page, CodingScheme scheme, bool eol_present = false,
                           const EventSink* sink = nullptr);

Bitmap decode_page(const CompressedPage& page, const EventSink* sink = nullptr);

}  // namespace cdocr
