#include "cdocr/features.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdocr/errors.hpp"

namespace cdocr {

std::vector<ModeEvent> extract_events(const CompressedPage& page, ModeMask mask,
                                      ExtractStats* stats) {
    if (page.scheme.kind == SchemeKind::G3_1D)
        throw FeatureError(FeatureError::Kind::No2DModes,
                           "1D modified Huffman streams carry no 2D mode codewords");
    if (page.width <= 0) throw Error("page width must be positive");

    std::vector<ModeEvent> events;
    std::size_t peak = 0;
    const EventSink sink = [&](const ModeEvent& e) {
        if (mask.accepts(e.mode)) events.push_back(e);
    };
    for (const StripView& strip : strips_of(page)) {
        BitReader br(strip.bytes, page.fill_order);
        std::vector<int> reference;
        for (int row = strip.row0; row < strip.row1; ++row) {
            std::vector<int> changes;
            if (page.scheme.kind == SchemeKind::G3_2D) {
                if (page.eol_present) expect_eol(br, row);
                if (br.at_end())
                    throw DecodeError(DecodeError::Kind::Truncated, row, "missing line tag bit");
                if (br.read_bit())
                    // 1D resync line: keeps the reference current, no events.
                    changes = changes_from_runs(mh_decode_line(br, page.width, row));
                else
                    changes = g2d_decode_line(br, reference, page.width, row, &sink);
            } else {
                changes = g2d_decode_line(br, reference, page.width, row, &sink);
            }
            peak = std::max(peak, changes.size() + reference.size());
            reference = std::move(changes);
        }
    }
    if (stats) {
        stats->event_count = events.size();
        stats->peak_change_elements = peak;
    }
    return events;
}

FeatureGrid grid_from_events(std::span<const ModeEvent> events, int width, int height) {
    FeatureGrid grid;
    grid.width = width;
    grid.height = height;
    for (const ModeEvent& e : events) grid.points.emplace(e.row, e.col);
    return grid;
}

FeatureGrid extract_bidirectional(const CompressedPage& page, ModeMask mask) {
    const auto forward = extract_events(page, mask);
    FeatureGrid grid = grid_from_events(forward, page.width, page.height);

    const Bitmap rotated = decode_page(page).rotated180();
    const CompressedPage recoded = encode_page(rotated, page.scheme, page.eol_present);
    for (const ModeEvent& e : extract_events(recoded, mask))
        grid.points.emplace(page.height - 1 - e.row, page.width - 1 - e.col);
    return grid;
}

Bitmap grid_to_bitmap(const FeatureGrid& grid) {
    Bitmap bm(grid.width, grid.height);
    for (const auto& [r, c] : grid.points) bm.set(r, c, 1);
    return bm;
}

FeatureGrid grid_from_bitmap(const Bitmap& bm) {
    FeatureGrid grid;
    grid.width = bm.width();
    grid.height = bm.height();
    for (int r = 0; r < bm.height(); ++r)
        for (int c = 0; c < bm.width(); ++c)
            if (bm.at(r, c)) grid.points.emplace(r, c);
    return grid;
}

void write_fgrid(std::ostream& out, const FeatureGrid& grid) {
    out << "FGRID " << grid.width << " " << grid.height << "\n";
    for (const auto& [r, c] : grid.points) out << r << " " << c << "\n";
}

FeatureGrid read_fgrid(std::istream& in) {
    std::string magic;
    FeatureGrid grid;
    if (!(in >> magic >> grid.width >> grid.height) || magic != "FGRID")
        throw Error("not a feature grid file");
    int r = 0, c = 0;
    while (in >> r >> c) {
        if (r < 0 || r >= grid.height || c < 0 || c >= grid.width)
            throw Error("feature grid point out of bounds");
        grid.points.emplace(r, c);
    }
    return grid;
}

FeatureGrid read_fgrid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_fgrid(in);
}

void write_fgrid_file(const std::string& path, const FeatureGrid& grid) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    write_fgrid(out, grid);
}

}  // namespace cdocr
