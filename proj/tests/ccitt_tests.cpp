#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "cdocr/ccitt.hpp"
#include "support.hpp"

using namespace cdocr;

namespace {

Bitmap from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
    Bitmap bm(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
    for (int r = 0; r < bm.height(); ++r)
        for (int c = 0; c < bm.width(); ++c) bm.set(r, c, rows[r][c]);
    return bm;
}

}  // namespace

TEST_SUITE("ccitt") {

TEST_CASE("classify_mode picks pass exactly when b2 lies left of a1") {
    // Reference run ends (b2=4) before the coding line changes (a1=5).
    CodingMode m = classify_mode({-1, false, 5, 8, 2, 4, 10});
    CHECK(m.kind == ModeKind::Pass);

    // b2 == a1 is not a pass; distance a1-b1 = 3 is still vertical.
    m = classify_mode({-1, false, 5, 8, 2, 5, 10});
    CHECK(m.kind == ModeKind::Vertical);
    CHECK(m.vertical_offset == 3);

    m = classify_mode({-1, false, 5, 8, 8, 10, 10});
    CHECK(m.kind == ModeKind::Vertical);
    CHECK(m.vertical_offset == -3);

    // Distance 4 falls through to horizontal, which codes both runs.
    m = classify_mode({-1, false, 5, 8, 1, 5, 10});
    CHECK(m.kind == ModeKind::Horizontal);
    CHECK(m.run1 == 5);  // imaginary a0 at -1 counts from column 0
    CHECK(m.run2 == 3);

    m = classify_mode({2, true, 6, 9, 10, 12, 16});
    CHECK(m.kind == ModeKind::Horizontal);
    CHECK(m.run1 == 4);
    CHECK(m.run2 == 3);
}

TEST_CASE("pass event sits at b2, vertical and horizontal at a1") {
    // Row 0 holds a lone black run; row 1 is blank. Coding row 1 sees the
    // run end (b2=8) before its own first change, so the stream carries one
    // pass code located at column 8. Row 0 itself is a horizontal code at
    // its first change, column 4.
    const Bitmap page = from_rows({
        {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    });
    std::vector<ModeEvent> events;
    EventSink sink = [&](const ModeEvent& e) { events.push_back(e); };
    encode_page(page, {SchemeKind::G4, 2}, false, &sink);
    REQUIRE(events.size() == 2);
    CHECK(events[0] == ModeEvent{0, 4, ModeKind::Horizontal});
    CHECK(events[1] == ModeEvent{1, 8, ModeKind::Pass});
}

TEST_CASE("an edge drifting by one column codes vertically at a1") {
    const Bitmap page = from_rows({
        {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0},
    });
    std::vector<ModeEvent> events;
    EventSink sink = [&](const ModeEvent& e) { events.push_back(e); };
    encode_page(page, {SchemeKind::G4, 2}, false, &sink);
    REQUIRE(events.size() == 3);
    CHECK(events[1] == ModeEvent{1, 5, ModeKind::Vertical});
    CHECK(events[2] == ModeEvent{1, 9, ModeKind::Vertical});
}

TEST_CASE("modified Huffman lines round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> wd(1, 3000);
        const int width = wd(rng);
        std::bernoulli_distribution bit(0.3);
        std::vector<std::uint8_t> px(width);
        for (auto& p : px) p = bit(rng) ? 1 : 0;

        BitWriter bw;
        mh_encode_line(bw, runlength_encode_line(px));
        const auto bytes = bw.take();
        BitReader br(bytes);
        const RunLengthLine back = mh_decode_line(br, width);
        CHECK(runlength_decode_line(back, width) == px);
    }
}

TEST_CASE("every width-8 line pair codes to exactly one valid mode list") {
    // Exhaustive over coding x reference rows: the coder must always choose
    // a mode, terminate, and invert cleanly.
    for (int coding = 0; coding < 256; ++coding) {
        for (int reference = 0; reference < 256; ++reference) {
            std::vector<std::uint8_t> cod(8), ref(8);
            for (int i = 0; i < 8; ++i) {
                cod[i] = coding >> i & 1;
                ref[i] = reference >> i & 1;
            }
            BitWriter bw;
            const std::vector<CodingMode> modes = g2d_encode_line(bw, cod, ref, 8);
            for (const CodingMode& m : modes) {
                if (m.kind == ModeKind::Vertical) {
                    CHECK(m.vertical_offset >= -3);
                    CHECK(m.vertical_offset <= 3);
                } else if (m.kind == ModeKind::Horizontal) {
                    // Both runs can legitimately be zero: run1 at a black
                    // line start, run2 when a1 is already the sentinel.
                    CHECK(m.run1 >= 0);
                    CHECK(m.run2 >= 0);
                    CHECK(m.run1 + m.run2 <= 8);
                }
            }
            const auto bytes = bw.take();
            BitReader br(bytes);
            REQUIRE(g2d_decode_line(br, ref, 8) == cod);
        }
    }
}

TEST_CASE("encoder and decoder report identical event streams") {
    std::mt19937_64 rng(4);
    for (const CodingScheme scheme : tf::twod_schemes()) {
        for (int trial = 0; trial < 40; ++trial) {
            const Bitmap bm = tf::random_bitmap(rng);
            std::vector<ModeEvent> enc_events, dec_events;
            EventSink enc_sink = [&](const ModeEvent& e) { enc_events.push_back(e); };
            EventSink dec_sink = [&](const ModeEvent& e) { dec_events.push_back(e); };
            const CompressedPage page = encode_page(bm, scheme, false, &enc_sink);
            decode_page(page, &dec_sink);
            CHECK(enc_events == dec_events);
        }
    }
}

TEST_CASE("pixels below a pass code keep the color that passed over them") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const Bitmap bm = tf::random_bitmap(rng);
        std::vector<ModeEvent> events;
        EventSink sink = [&](const ModeEvent& e) { events.push_back(e); };
        encode_page(bm, {SchemeKind::G4, 2}, false, &sink);
        for (const ModeEvent& e : events) {
            if (e.mode != ModeKind::Pass) continue;
            // The run from a0 extends beyond b2, so the pixel at the event
            // column matches its left neighbor (a1 > b2 guarantees one).
            REQUIRE(e.col >= 1);
            CHECK(bm.at(e.row, e.col) == bm.at(e.row, e.col - 1));
        }
    }
}

TEST_CASE("round trips hold across schemes, sizes, and densities") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 60; ++trial) {
        const Bitmap bm = tf::random_bitmap(rng);
        for (const CodingScheme scheme : tf::all_schemes()) {
            for (bool eol : {false, true}) {
                if (eol && scheme.kind == SchemeKind::G4) continue;
                const CompressedPage page = encode_page(bm, scheme, eol);
                CHECK(decode_page(page) == bm);
            }
        }
    }
}

TEST_CASE("a 50% noise page may not compress but must still code") {
    std::mt19937_64 rng(12);
    Bitmap bm(64, 64);
    std::bernoulli_distribution bit(0.5);
    for (int r = 0; r < 64; ++r)
        for (int c = 0; c < 64; ++c) bm.set(r, c, bit(rng) ? 1 : 0);
    for (const CodingScheme scheme : tf::all_schemes()) {
        const CompressedPage page = encode_page(bm, scheme, false);
        CHECK(decode_page(page) == bm);
    }
}

TEST_CASE("single-pixel and single-line extremes round trip") {
    for (const CodingScheme scheme : tf::all_schemes()) {
        for (std::uint8_t fill : {0, 1}) {
            CHECK(decode_page(encode_page(Bitmap(1, 1, fill), scheme)) == Bitmap(1, 1, fill));
            CHECK(decode_page(encode_page(Bitmap(64, 1, fill), scheme)) == Bitmap(64, 1, fill));
            CHECK(decode_page(encode_page(Bitmap(1, 64, fill), scheme)) == Bitmap(1, 64, fill));
        }
    }
}

TEST_CASE("a corrupted byte surfaces as a decode error with its row") {
    Bitmap bm(100, 3, 0);
    for (int c = 20; c < 60; ++c) bm.set(1, c, 1);
    CompressedPage page = encode_page(bm, {SchemeKind::G3_1D, 2}, false);
    // Zeroing a whole byte forges a long zero prefix that matches no
    // codeword in an EOL-less stream.
    bool threw = false;
    for (std::size_t victim = 0; victim < page.data.size() && !threw; ++victim) {
        CompressedPage broken = page;
        broken.data[victim] = 0x00;
        try {
            const Bitmap out = decode_page(broken);
            if (out == bm) continue;  // corruption hit dead padding
        } catch (const DecodeError& e) {
            threw = true;
            CHECK(e.row >= 0);
            CHECK(e.row < bm.height());
        }
    }
    CHECK(threw);
}

TEST_CASE("truncated streams fail loudly, never silently") {
    const Bitmap bm = tf::text_page(21);
    for (const CodingScheme scheme : tf::all_schemes()) {
        CompressedPage page = encode_page(bm, scheme, false);
        CompressedPage cut = page;
        cut.data.resize(page.data.size() / 2);
        CHECK_THROWS_AS(decode_page(cut), DecodeError);
    }
}

TEST_CASE("strips restart the coder with a white reference line") {
    std::mt19937_64 rng(13);
    const Bitmap bm = tf::random_bitmap(rng, 48, 40);
    const int split = bm.height() / 2 + 1;
    Bitmap top(bm.width(), split), bottom(bm.width(), bm.height() - split);
    for (int r = 0; r < bm.height(); ++r)
        for (int c = 0; c < bm.width(); ++c)
            (r < split ? top : bottom).set(r < split ? r : r - split, c, bm.at(r, c));

    const CompressedPage a = encode_page(top, {SchemeKind::G4, 2});
    const CompressedPage b = encode_page(bottom, {SchemeKind::G4, 2});
    CompressedPage whole;
    whole.scheme = {SchemeKind::G4, 2};
    whole.width = bm.width();
    whole.height = bm.height();
    whole.rows_per_strip = split;
    whole.data = a.data;
    whole.data.insert(whole.data.end(), b.data.begin(), b.data.end());
    whole.strip_offsets = {0, a.data.size()};
    CHECK(decode_page(whole) == bm);
}

TEST_CASE("G3 2D honors the resync period k") {
    std::mt19937_64 rng(14);
    const Bitmap bm = tf::random_bitmap(rng, 64, 32);
    for (int k : {1, 2, 4, 7}) {
        for (bool eol : {false, true}) {
            const CompressedPage page = encode_page(bm, {SchemeKind::G3_2D, k}, eol);
            CHECK(page.scheme.k == k);
            CHECK(decode_page(page) == bm);
        }
    }
}

TEST_CASE("the invert flag flips the decoded pixel sense") {
    const Bitmap bm = tf::text_page(22);
    CompressedPage page = encode_page(bm, {SchemeKind::G4, 2});
    page.invert = true;
    const Bitmap out = decode_page(page);
    for (int r = 0; r < bm.height(); ++r)
        for (int c = 0; c < bm.width(); ++c) REQUIRE(out.at(r, c) == (bm.at(r, c) ^ 1));
}

TEST_CASE("EOL framing tolerates zero fill and round trips") {
    BitWriter bw;
    bw.put_bits(0b101, 3);
    write_eol(bw);
    bw.put_bits(0, 9);  // fill
    write_eol(bw);
    const auto bytes = bw.take();
    BitReader br(bytes);
    br.read_bit();
    br.read_bit();
    br.read_bit();
    expect_eol(br, 0);
    expect_eol(br, 1);

    const Bitmap bm = tf::text_page(23);
    for (SchemeKind kind : {SchemeKind::G3_1D, SchemeKind::G3_2D}) {
        const CompressedPage page = encode_page(bm, {kind, 2}, true);
        CHECK(page.eol_present);
        CHECK(decode_page(page) == bm);
    }
}

}  // TEST_SUITE
