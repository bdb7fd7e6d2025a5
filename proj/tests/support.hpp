#pragma once

// Shared fixture plumbing: seeded random bitmaps, small text pages, and the
// decode-path event tap. Everything here is deterministic per seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cdocr/ccitt.hpp"
#include "cdocr/render.hpp"

namespace tf {

inline cdocr::Bitmap random_bitmap(std::mt19937_64& rng, int max_w = 64, int max_h = 64) {
    std::uniform_int_distribution<int> wd(1, max_w), hd(1, max_h);
    std::uniform_real_distribution<double> dd(0.0, 1.0);
    cdocr::Bitmap bm(wd(rng), hd(rng));
    std::bernoulli_distribution bit(dd(rng));
    for (int r = 0; r < bm.height(); ++r)
        for (int c = 0; c < bm.width(); ++c) bm.set(r, c, bit(rng) ? 1 : 0);
    return bm;
}

inline std::vector<cdocr::CodingScheme> all_schemes() {
    using cdocr::SchemeKind;
    return {{SchemeKind::G3_1D, 2}, {SchemeKind::G3_2D, 2}, {SchemeKind::G4, 2}};
}

// Schemes that carry 2D codewords, i.e. produce mode events.
inline std::vector<cdocr::CodingScheme> twod_schemes() {
    using cdocr::SchemeKind;
    return {{SchemeKind::G3_2D, 2}, {SchemeKind::G4, 2}};
}

inline cdocr::PageSpec text_spec(std::uint64_t seed) {
    static const std::vector<std::string> words = {
        "the",  "quick", "brown", "fox",  "jumps", "over",  "lazy", "dog",
        "pack", "my",    "box",   "with", "five",  "dozen", "jugs", "now"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nlines(1, 3), nwords(1, 4),
        pick(0, static_cast<int>(words.size()) - 1);
    cdocr::PageSpec spec;
    for (int l = nlines(rng); l > 0; --l) {
        std::string line;
        for (int w = nwords(rng); w > 0; --w) {
            if (!line.empty()) line += ' ';
            line += words[pick(rng)];
        }
        spec.lines.push_back(line);
    }
    return spec;
}

inline cdocr::Bitmap text_page(std::uint64_t seed) { return cdocr::render_page(text_spec(seed)).page; }

// Events reported while fully decoding the page; the reference the
// compressed-domain extractor has to match.
inline std::vector<cdocr::ModeEvent> tap_events(const cdocr::CompressedPage& page) {
    std::vector<cdocr::ModeEvent> events;
    cdocr::EventSink sink = [&](const cdocr::ModeEvent& e) { events.push_back(e); };
    cdocr::decode_page(page, &sink);
    return events;
}

}  // namespace tf
