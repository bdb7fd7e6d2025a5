#pragma once

#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdocr/ccitt.hpp"

namespace cdocr {

struct ModeMask {
    bool pass = false;
    bool vertical = false;
    bool horizontal = false;

    static ModeMask all() { return {true, true, true}; }
    static ModeMask only(ModeKind k) {
        ModeMask m;
        m.set(k, true);
        return m;
    }
    void set(ModeKind k, bool v) {
        if (k == ModeKind::Pass) pass = v;
        if (k == ModeKind::Vertical) vertical = v;
        if (k == ModeKind::Horizontal) horizontal = v;
    }
    bool accepts(ModeKind k) const {
        return k == ModeKind::Pass ? pass : k == ModeKind::Vertical ? vertical : horizontal;
    }
};

// Sparse page-sized point set, ordered row-major.
struct FeatureGrid {
    int width = 0;
    int height = 0;
    std::set<std::pair<int, int>> points;  // (row, col)

    bool operator==(const FeatureGrid&) const = default;
};

struct ExtractStats {
    std::size_t event_count = 0;
    // Peak changing-element entries alive at once. Grows with line width,
    // never with page height: the witness that no raster was materialized.
    std::size_t peak_change_elements = 0;
};

// Streams mode events straight off the entropy decoder; no raster is built.
// The event set equals what a decode_page tap would report. G3_1D input has
// no 2D codewords at all and raises FeatureError.
std::vector<ModeEvent> extract_events(const CompressedPage& page, ModeMask mask,
                                      ExtractStats* stats = nullptr);

FeatureGrid grid_from_events(std::span<const ModeEvent> events, int width, int height);

// Union of the forward grid with the grid of the 180-degree-rotated page,
// re-encoded under the same scheme and mapped back into page coordinates.
// The rotation leg decompresses; the forward leg does not.
FeatureGrid extract_bidirectional(const CompressedPage& page, ModeMask mask);

Bitmap grid_to_bitmap(const FeatureGrid& grid);
FeatureGrid grid_from_bitmap(const Bitmap& bm);

// Text form: "FGRID <width> <height>" then one "row col" line per point in
// row-major order.
void write_fgrid(std::ostream& out, const FeatureGrid& grid);
FeatureGrid read_fgrid(std::istream& in);
FeatureGrid read_fgrid_file(const std::string& path);
void write_fgrid_file(const std::string& path, const FeatureGrid& grid);

}  // namespace cdocr
