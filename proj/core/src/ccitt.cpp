#include "cdocr/ccitt.hpp"

#include <algorithm>
#include <string>

#include "cdocr/errors.hpp"
#include "cdocr/t4_tables.hpp"

namespace cdocr {

CodingMode classify_mode(const CodingState& st) {
    if (st.b2 < st.a1) return {ModeKind::Pass, 0, 0, 0};
    const int d = st.a1 - st.b1;
    if (d >= -3 && d <= 3) return {ModeKind::Vertical, d, 0, 0};
    const int from = st.a0 < 0 ? 0 : st.a0;
    return {ModeKind::Horizontal, 0, st.a1 - from, st.a2 - st.a1};
}

namespace {

void emit_event(const EventSink* sink, int row, int col, int width, ModeKind mode) {
    // Sentinel-positioned codewords carry no page location.
    if (sink && col < width) (*sink)(ModeEvent{row, col, mode});
}

void encode_run(BitWriter& bw, bool black, int run) {
    while (run > t4::kMaxMakeupRun + 63) {
        const auto cw = t4::makeup_code(black, t4::kMaxMakeupRun);
        bw.put_bits(cw.value, cw.length);
        run -= t4::kMaxMakeupRun;
    }
    if (run >= 64) {
        const auto cw = t4::makeup_code(black, run / 64 * 64);
        bw.put_bits(cw.value, cw.length);
        run %= 64;
    }
    const auto cw = t4::terminating_code(black, run);
    bw.put_bits(cw.value, cw.length);
}

int decode_run(BitReader& br, bool black, int row) {
    int total = 0;
    for (;;) {
        std::uint32_t acc = 0;
        int len = 0;
        for (;;) {
            if (br.at_end())
                throw DecodeError(DecodeError::Kind::Truncated, row, "run codeword cut short");
            acc = acc << 1 | static_cast<std::uint32_t>(br.read_bit());
            ++len;
            if (const auto m = t4::match_run(black, acc, len)) {
                total += m->run;
                if (m->terminating) return total;
                break;  // make-up code, another codeword of the same color follows
            }
            if (len > t4::kMaxRunCodeBits)
                throw DecodeError(DecodeError::Kind::InvalidCode, row,
                                  "no run codeword matches " + std::to_string(len) + " bits");
        }
    }
}

// First index in `changes` whose position exceeds a0. `hint` is a monotone
// cursor amortizing the scan across a line.
std::size_t first_after(const std::vector<int>& changes, int a0, std::size_t& hint) {
    while (hint < changes.size() && changes[hint] <= a0) ++hint;
    return hint;
}

// b1 per ITU-T T.4: first reference change right of a0 changing to the color
// opposite a0's. Even indices change to black.
void locate_b(const std::vector<int>& reference, int a0, bool a0_black, int width,
              std::size_t& hint, int& b1, int& b2) {
    std::size_t i = first_after(reference, a0, hint);
    const bool want_even = !a0_black;  // white a0 pairs with a to-black change
    if (i < reference.size() && (i % 2 == 0) != want_even) ++i;
    b1 = i < reference.size() ? reference[i] : width;
    b2 = i + 1 < reference.size() ? reference[i + 1] : width;
}

}  // namespace

void mh_encode_line(BitWriter& bw, const RunLengthLine& line) {
    bool black = false;
    for (int run : line.runs) {
        encode_run(bw, black, run);
        black = !black;
    }
}

RunLengthLine mh_decode_line(BitReader& br, int width, int row) {
    RunLengthLine line;
    int total = 0;
    bool black = false;
    while (total < width) {
        const int run = decode_run(br, black, row);
        total += run;
        if (total > width)
            throw DecodeError(DecodeError::Kind::Overrun, row,
                              "runs overrun line width " + std::to_string(width));
        line.runs.push_back(run);
        black = !black;
    }
    return line;
}

std::vector<CodingMode> g2d_encode_line(BitWriter& bw, const std::vector<int>& coding,
                                        const std::vector<int>& reference, int width,
                                        int row, const EventSink* sink) {
    std::vector<CodingMode> modes;
    std::size_t ci = 0, ri = 0;
    int a0 = -1;
    bool black = false;
    while (a0 < width) {
        const std::size_t ai = first_after(coding, a0, ci);
        const int a1 = ai < coding.size() ? coding[ai] : width;
        const int a2 = ai + 1 < coding.size() ? coding[ai + 1] : width;
        int b1 = 0, b2 = 0;
        locate_b(reference, a0, black, width, ri, b1, b2);

        const CodingMode mode = classify_mode({a0, black, a1, a2, b1, b2, width});
        modes.push_back(mode);
        switch (mode.kind) {
            case ModeKind::Pass: {
                const auto cw = t4::pass_code();
                bw.put_bits(cw.value, cw.length);
                emit_event(sink, row, b2, width, ModeKind::Pass);
                a0 = b2;
                break;
            }
            case ModeKind::Vertical: {
                const auto cw = t4::vertical_code(mode.vertical_offset);
                bw.put_bits(cw.value, cw.length);
                emit_event(sink, row, a1, width, ModeKind::Vertical);
                a0 = a1;
                black = !black;
                if (a1 >= width) return modes;
                break;
            }
            case ModeKind::Horizontal: {
                const auto cw = t4::horizontal_code();
                bw.put_bits(cw.value, cw.length);
                encode_run(bw, black, mode.run1);
                encode_run(bw, !black, mode.run2);
                emit_event(sink, row, a1, width, ModeKind::Horizontal);
                a0 = a2;
                if (a2 >= width) return modes;
                break;
            }
        }
    }
    return modes;
}

std::vector<int> g2d_decode_line(BitReader& br, const std::vector<int>& reference,
                                 int width, int row, const EventSink* sink) {
    std::vector<int> changes;
    std::size_t ri = 0;
    int a0 = -1;
    bool black = false;
    for (;;) {
        int b1 = 0, b2 = 0;
        locate_b(reference, a0, black, width, ri, b1, b2);

        std::uint32_t acc = 0;
        int len = 0;
        t4::Match2D mode{};
        for (;;) {
            if (br.at_end())
                throw DecodeError(DecodeError::Kind::Truncated, row, "mode codeword cut short");
            acc = acc << 1 | static_cast<std::uint32_t>(br.read_bit());
            ++len;
            if (const auto m = t4::match_2d(acc, len)) {
                mode = *m;
                break;
            }
            if (len >= t4::kMax2dCodeBits)
                throw DecodeError(DecodeError::Kind::InvalidCode, row,
                                  "no 2D mode codeword matches");
        }

        switch (mode.kind) {
            case t4::Match2D::Kind::Pass: {
                if (b2 >= width)
                    throw DecodeError(DecodeError::Kind::Overrun, row,
                                      "pass mode beyond line end");
                emit_event(sink, row, b2, width, ModeKind::Pass);
                a0 = b2;
                break;
            }
            case t4::Match2D::Kind::Vertical: {
                const int a1 = b1 + mode.offset;
                if (a1 <= a0)
                    throw DecodeError(DecodeError::Kind::InvalidCode, row,
                                      "vertical mode does not advance");
                if (a1 < 0 || a1 > width)
                    throw DecodeError(DecodeError::Kind::Overrun, row,
                                      "vertical mode beyond line bounds");
                emit_event(sink, row, a1, width, ModeKind::Vertical);
                if (a1 == width) return changes;
                changes.push_back(a1);
                a0 = a1;
                black = !black;
                break;
            }
            case t4::Match2D::Kind::Horizontal: {
                const int from = a0 < 0 ? 0 : a0;
                const int r1 = decode_run(br, black, row);
                const int r2 = decode_run(br, !black, row);
                const int a1 = from + r1;
                const int a2 = a1 + r2;
                if (a2 > width)
                    throw DecodeError(DecodeError::Kind::Overrun, row,
                                      "horizontal mode runs overrun line");
                if (a0 >= 0 && r1 == 0)
                    throw DecodeError(DecodeError::Kind::InvalidCode, row,
                                      "horizontal mode does not advance");
                if (r2 == 0 && a2 < width)
                    throw DecodeError(DecodeError::Kind::InvalidCode, row,
                                      "zero-length horizontal run mid-line");
                emit_event(sink, row, a1, width, ModeKind::Horizontal);
                if (a1 < width) changes.push_back(a1);
                if (a2 < width) changes.push_back(a2);
                a0 = a2;
                if (a2 >= width) return changes;
                break;
            }
        }
    }
}

std::vector<CodingMode> g2d_encode_line(BitWriter& bw, std::span<const std::uint8_t> coding,
                                        std::span<const std::uint8_t> reference, int width,
                                        int row, const EventSink* sink) {
    return g2d_encode_line(bw, changes_from_pixels(coding), changes_from_pixels(reference),
                           width, row, sink);
}

std::vector<std::uint8_t> g2d_decode_line(BitReader& br,
                                          std::span<const std::uint8_t> reference, int width,
                                          int row, const EventSink* sink) {
    const auto changes =
        g2d_decode_line(br, changes_from_pixels(reference), width, row, sink);
    return pixels_from_changes(changes, width);
}

void write_eol(BitWriter& bw) { bw.put_bits(t4::kEol.value, t4::kEol.length); }

void expect_eol(BitReader& br, int row) {
    int zeros = 0;
    for (;;) {
        if (br.at_end())
            throw DecodeError(DecodeError::Kind::Truncated, row, "EOL cut short");
        if (br.read_bit() == 0) {
            ++zeros;
            continue;
        }
        if (zeros < t4::kEol.length - 1)
            throw DecodeError(DecodeError::Kind::InvalidCode, row, "EOL expected");
        return;
    }
}

CompressedPage encode_page(const Bitmap& page, CodingScheme scheme, bool eol_present,
                           const EventSink* sink) {
    if (page.width() <= 0) throw Error("page width must be positive");
    BitWriter bw;
    if (scheme.kind == SchemeKind::G4) eol_present = false;
    std::vector<int> reference;  // empty change list = all-white line
    for (int row = 0; row < page.height(); ++row) {
        const auto coding = changes_from_pixels(page.row(row));
        switch (scheme.kind) {
            case SchemeKind::G3_1D:
                if (eol_present)
                    write_eol(bw);
                else
                    bw.align();
                mh_encode_line(bw, runs_from_changes(coding, page.width()));
                break;
            case SchemeKind::G3_2D: {
                if (eol_present) write_eol(bw);
                const bool one_dimensional = scheme.k <= 1 || row % scheme.k == 0;
                bw.put_bit(one_dimensional ? 1 : 0);
                if (one_dimensional)
                    mh_encode_line(bw, runs_from_changes(coding, page.width()));
                else
                    g2d_encode_line(bw, coding, reference, page.width(), row, sink);
                break;
            }
            case SchemeKind::G4:
                g2d_encode_line(bw, coding, reference, page.width(), row, sink);
                break;
        }
        reference = coding;
    }
    CompressedPage out;
    out.data = bw.take(FillOrder::MsbFirst);
    out.scheme = scheme;
    out.width = page.width();
    out.height = page.height();
    out.eol_present = eol_present;
    return out;
}

std::vector<StripView> strips_of(const CompressedPage& page) {
    std::span<const std::uint8_t> all(page.data);
    if (page.strip_offsets.size() <= 1)
        return {StripView{0, page.height, all}};
    std::vector<StripView> strips;
    const int rps = page.rows_per_strip > 0 ? page.rows_per_strip : page.height;
    for (std::size_t s = 0; s < page.strip_offsets.size(); ++s) {
        const std::size_t from = page.strip_offsets[s];
        const std::size_t to =
            s + 1 < page.strip_offsets.size() ? page.strip_offsets[s + 1] : all.size();
        const int row0 = static_cast<int>(s) * rps;
        const int row1 = std::min(page.height, row0 + rps);
        if (row0 >= page.height || from > to || to > all.size())
            throw Error("inconsistent strip layout");
        strips.push_back({row0, row1, all.subspan(from, to - from)});
    }
    if (strips.back().row1 != page.height) throw Error("strips do not cover the page");
    return strips;
}

Bitmap decode_page(const CompressedPage& page, const EventSink* sink) {
    if (page.width <= 0) throw Error("page width must be positive");
    Bitmap out(page.width, page.height);
    for (const StripView& strip : strips_of(page)) {
        BitReader br(strip.bytes, page.fill_order);
        std::vector<int> reference;
        for (int row = strip.row0; row < strip.row1; ++row) {
            std::vector<int> changes;
            switch (page.scheme.kind) {
                case SchemeKind::G3_1D:
                    if (page.eol_present)
                        expect_eol(br, row);
                    else
                        br.align();
                    changes = changes_from_runs(mh_decode_line(br, page.width, row));
                    break;
                case SchemeKind::G3_2D: {
                    if (page.eol_present) expect_eol(br, row);
                    if (br.at_end())
                        throw DecodeError(DecodeError::Kind::Truncated, row,
                                          "missing line tag bit");
                    if (br.read_bit())
                        changes = changes_from_runs(mh_decode_line(br, page.width, row));
                    else
                        changes = g2d_decode_line(br, reference, page.width, row, sink);
                    break;
                }
                case SchemeKind::G4:
                    changes = g2d_decode_line(br, reference, page.width, row, sink);
                    break;
            }
            auto pixels = pixels_from_changes(changes, page.width);
            std::copy(pixels.begin(), pixels.end(), out.row(row).begin());
            reference = std::move(changes);
        }
    }
    if (page.invert)
        for (int r = 0; r < out.height(); ++r)
            for (auto& px : out.row(r)) px ^= 1;
    return out;
}

}  // namespace cdocr
