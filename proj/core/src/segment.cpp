#include "cdocr/segment.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdocr/errors.hpp"

namespace cdocr {

ProjectionProfile horizontal_profile(const FeatureGrid& grid) {
    ProjectionProfile p{ProjectionProfile::Axis::Rows, std::vector<int>(grid.height, 0)};
    for (const auto& [r, c] : grid.points) ++p.counts[r];
    return p;
}

ProjectionProfile vertical_profile(const FeatureGrid& grid) {
    ProjectionProfile p{ProjectionProfile::Axis::Columns, std::vector<int>(grid.width, 0)};
    for (const auto& [r, c] : grid.points) ++p.counts[c];
    return p;
}

namespace {

// Maximal nonzero stretches of `counts`, bridging interior zero runs shorter
// than min_gap; bands whose total count is below min_mass are dropped.
std::vector<Band> profile_bands(const std::vector<int>& counts, int min_gap, int min_mass,
                                BandKind kind) {
    std::vector<Band> bands;
    const int n = static_cast<int>(counts.size());
    int i = 0;
    while (i < n) {
        if (counts[i] == 0) {
            ++i;
            continue;
        }
        const int start = i;
        int last_nonzero = i;
        int mass = 0;
        while (i < n) {
            if (counts[i] > 0) {
                mass += counts[i];
                last_nonzero = i;
                ++i;
            } else {
                int j = i;
                while (j < n && counts[j] == 0) ++j;
                if (j - i >= min_gap || j == n) break;
                i = j;
            }
        }
        if (mass >= min_mass) bands.push_back({start, last_nonzero + 1, kind});
        i = last_nonzero + 1;
    }
    return bands;
}

}  // namespace

std::vector<Band> segment_lines(const FeatureGrid& grid, int min_gap, int min_mass) {
    return profile_bands(horizontal_profile(grid).counts, min_gap, min_mass, BandKind::Line);
}

std::vector<Band> segment_words(const FeatureGrid& grid, const Band& line, int min_gap) {
    std::vector<int> counts(grid.width, 0);
    for (const auto& [r, c] : grid.points)
        if (r >= line.start && r < line.end) ++counts[c];
    return profile_bands(counts, min_gap, 1, BandKind::Word);
}

std::vector<Band> segment_chars(const FeatureGrid& grid, const Band& word, int cell_width) {
    if (cell_width <= 0) throw Error("character cell width must be positive");
    int anchor = -1;
    int last = -1;
    for (const auto& [r, c] : grid.points) {
        if (c < word.start || c >= word.end) continue;
        if (anchor < 0 || c < anchor) anchor = c;
        if (c > last) last = c;
    }
    std::vector<Band> cells;
    if (anchor < 0) return cells;
    const int span = last + 1 - anchor;
    const int n = (span + cell_width - 1) / cell_width;
    for (int i = 0; i < n; ++i) {
        const int c0 = anchor + i * cell_width;
        const int c1 = std::min(c0 + cell_width, last + 1);
        cells.push_back({c0, c1, BandKind::Character});
    }
    return cells;
}

PageSegmentation segment_page(const FeatureGrid& grid, const SegmentParams& params) {
    PageSegmentation seg;
    for (const Band& line : segment_lines(grid, params.min_line_gap, params.min_line_mass)) {
        // Character anchoring must not look outside this line's rows, so
        // chars are cut on a view restricted to the band.
        FeatureGrid view;
        view.width = grid.width;
        view.height = grid.height;
        for (const auto& [r, c] : grid.points)
            if (r >= line.start && r < line.end) view.points.emplace(r, c);

        LineSegment ls{line, {}};
        for (const Band& word : segment_words(grid, line, params.min_word_gap))
            ls.words.push_back({word, segment_chars(view, word, params.cell_width)});
        seg.lines.push_back(std::move(ls));
    }
    return seg;
}

void write_segmentation(std::ostream& out, const PageSegmentation& seg) {
    for (const LineSegment& line : seg.lines) {
        out << "LINE " << line.rows.start << " " << line.rows.end << "\n";
        for (const WordSegment& word : line.words) {
            out << "WORD " << line.rows.start << " " << line.rows.end << " "
                << word.cols.start << " " << word.cols.end << "\n";
            for (const Band& ch : word.chars)
                out << "CHAR " << line.rows.start << " " << line.rows.end << " " << ch.start
                    << " " << ch.end << "\n";
        }
    }
}

PageSegmentation read_segmentation(std::istream& in) {
    PageSegmentation seg;
    std::string tag;
    while (in >> tag) {
        if (tag == "LINE") {
            Band rows{};
            rows.kind = BandKind::Line;
            if (!(in >> rows.start >> rows.end)) throw Error("malformed LINE record");
            seg.lines.push_back({rows, {}});
        } else if (tag == "WORD") {
            int r0 = 0, r1 = 0;
            Band cols{};
            cols.kind = BandKind::Word;
            if (!(in >> r0 >> r1 >> cols.start >> cols.end) || seg.lines.empty() ||
                r0 != seg.lines.back().rows.start || r1 != seg.lines.back().rows.end)
                throw Error("malformed WORD record");
            seg.lines.back().words.push_back({cols, {}});
        } else if (tag == "CHAR") {
            int r0 = 0, r1 = 0;
            Band cols{};
            cols.kind = BandKind::Character;
            if (!(in >> r0 >> r1 >> cols.start >> cols.end) || seg.lines.empty() ||
                seg.lines.back().words.empty() || r0 != seg.lines.back().rows.start ||
                r1 != seg.lines.back().rows.end)
                throw Error("malformed CHAR record");
            seg.lines.back().words.back().chars.push_back(cols);
        } else {
            throw Error("unknown segmentation record " + tag);
        }
    }
    return seg;
}

void write_segmentation_file(const std::string& path, const PageSegmentation& seg) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    write_segmentation(out, seg);
}

}  // namespace cdocr
