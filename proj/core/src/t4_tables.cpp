#include "cdocr/t4_tables.hpp"

#include <array>
#include <unordered_map>

#include "cdocr/errors.hpp"

namespace cdocr::t4 {

namespace {

// Terminating codes, indexed by run length 0..63.
constexpr std::array<Codeword, 64> kWhiteTerminating{{
    {0x35, 8}, {0x07, 6}, {0x07, 4}, {0x08, 4}, {0x0B, 4}, {0x0C, 4},
    {0x0E, 4}, {0x0F, 4}, {0x13, 5}, {0x14, 5}, {0x07, 5}, {0x08, 5},
    {0x08, 6}, {0x03, 6}, {0x34, 6}, {0x35, 6}, {0x2A, 6}, {0x2B, 6},
    {0x27, 7}, {0x0C, 7}, {0x08, 7}, {0x17, 7}, {0x03, 7}, {0x04, 7},
    {0x28, 7}, {0x2B, 7}, {0x13, 7}, {0x24, 7}, {0x18, 7}, {0x02, 8},
    {0x03, 8}, {0x1A, 8}, {0x1B, 8}, {0x12, 8}, {0x13, 8}, {0x14, 8},
    {0x15, 8}, {0x16, 8}, {0x17, 8}, {0x28, 8}, {0x29, 8}, {0x2A, 8},
    {0x2B, 8}, {0x2C, 8}, {0x2D, 8}, {0x04, 8}, {0x05, 8}, {0x0A, 8},
    {0x0B, 8}, {0x52, 8}, {0x53, 8}, {0x54, 8}, {0x55, 8}, {0x24, 8},
    {0x25, 8}, {0x58, 8}, {0x59, 8}, {0x5A, 8}, {0x5B, 8}, {0x4A, 8},
    {0x4B, 8}, {0x32, 8}, {0x33, 8}, {0x34, 8},
}};

constexpr std::array<Codeword, 64> kBlackTerminating{{
    {0x37, 10}, {0x02, 3},  {0x03, 2},  {0x02, 2},  {0x03, 3},  {0x03, 4},
    {0x02, 4},  {0x03, 5},  {0x05, 6},  {0x04, 6},  {0x04, 7},  {0x05, 7},
    {0x07, 7},  {0x04, 8},  {0x07, 8},  {0x18, 9},  {0x17, 10}, {0x18, 10},
    {0x08, 10}, {0x67, 11}, {0x68, 11}, {0x6C, 11}, {0x37, 11}, {0x28, 11},
    {0x17, 11}, {0x18, 11}, {0xCA, 12}, {0xCB, 12}, {0xCC, 12}, {0xCD, 12},
    {0x68, 12}, {0x69, 12}, {0x6A, 12}, {0x6B, 12}, {0xD2, 12}, {0xD3, 12},
    {0xD4, 12}, {0xD5, 12}, {0xD6, 12}, {0xD7, 12}, {0x6C, 12}, {0x6D, 12},
    {0xDA, 12}, {0xDB, 12}, {0x54, 12}, {0x55, 12}, {0x56, 12}, {0x57, 12},
    {0x64, 12}, {0x65, 12}, {0x52, 12}, {0x53, 12}, {0x24, 12}, {0x37, 12},
    {0x38, 12}, {0x27, 12}, {0x28, 12}, {0x58, 12}, {0x59, 12}, {0x2B, 12},
    {0x2C, 12}, {0x5A, 12}, {0x66, 12}, {0x67, 12},
}};

// Make-up codes, indexed by run/64 - 1 for runs 64..1728.
constexpr std::array<Codeword, 27> kWhiteMakeup{{
    {0x1B, 5}, {0x12, 5}, {0x17, 6}, {0x37, 7}, {0x36, 8}, {0x37, 8},
    {0x64, 8}, {0x65, 8}, {0x68, 8}, {0x67, 8}, {0xCC, 9}, {0xCD, 9},
    {0xD2, 9}, {0xD3, 9}, {0xD4, 9}, {0xD5, 9}, {0xD6, 9}, {0xD7, 9},
    {0xD8, 9}, {0xD9, 9}, {0xDA, 9}, {0xDB, 9}, {0x98, 9}, {0x99, 9},
    {0x9A, 9}, {0x18, 6}, {0x9B, 9},
}};

constexpr std::array<Codeword, 27> kBlackMakeup{{
    {0x0F, 10}, {0xC8, 12}, {0xC9, 12}, {0x5B, 12}, {0x33, 12}, {0x34, 12},
    {0x35, 12}, {0x6C, 13}, {0x6D, 13}, {0x4A, 13}, {0x4B, 13}, {0x4C, 13},
    {0x4D, 13}, {0x72, 13}, {0x73, 13}, {0x74, 13}, {0x75, 13}, {0x76, 13},
    {0x77, 13}, {0x52, 13}, {0x53, 13}, {0x54, 13}, {0x55, 13}, {0x5A, 13},
    {0x5B, 13}, {0x64, 13}, {0x65, 13},
}};

// Extended make-up codes shared by both colors, runs 1792..2560.
constexpr std::array<Codeword, 13> kExtendedMakeup{{
    {0x08, 11}, {0x0C, 11}, {0x0D, 11}, {0x12, 12}, {0x13, 12}, {0x14, 12},
    {0x15, 12}, {0x16, 12}, {0x17, 12}, {0x1C, 12}, {0x1D, 12}, {0x1E, 12},
    {0x1F, 12},
}};

constexpr std::uint32_t match_key(std::uint32_t value, int length) {
    return value | static_cast<std::uint32_t>(length) << 16;
}

using RunLookup = std::unordered_map<std::uint32_t, RunMatch>;

RunLookup build_run_lookup(bool black) {
    RunLookup map;
    const auto& terminating = black ? kBlackTerminating : kWhiteTerminating;
    const auto& makeup = black ? kBlackMakeup : kWhiteMakeup;
    for (int run = 0; run < 64; ++run) {
        const auto cw = terminating[run];
        map.emplace(match_key(cw.value, cw.length), RunMatch{run, true});
    }
    for (int i = 0; i < 27; ++i) {
        const auto cw = makeup[i];
        map.emplace(match_key(cw.value, cw.length), RunMatch{(i + 1) * 64, false});
    }
    for (int i = 0; i < 13; ++i) {
        const auto cw = kExtendedMakeup[i];
        map.emplace(match_key(cw.value, cw.length), RunMatch{1792 + i * 64, false});
    }
    return map;
}

}  // namespace

Codeword terminating_code(bool black, int run) {
    if (run < 0 || run > 63) throw Error("terminating code run out of range");
    return black ? kBlackTerminating[run] : kWhiteTerminating[run];
}

Codeword makeup_code(bool black, int run) {
    if (run < 64 || run > kMaxMakeupRun || run % 64 != 0)
        throw Error("make-up code run out of range");
    if (run >= 1792) return kExtendedMakeup[(run - 1792) / 64];
    return black ? kBlackMakeup[run / 64 - 1] : kWhiteMakeup[run / 64 - 1];
}

std::optional<RunMatch> match_run(bool black, std::uint32_t value, int length) {
    static const RunLookup white_lookup = build_run_lookup(false);
    static const RunLookup black_lookup = build_run_lookup(true);
    const auto& map = black ? black_lookup : white_lookup;
    const auto it = map.find(match_key(value, length));
    if (it == map.end()) return std::nullopt;
    return it->second;
}

Codeword pass_code() { return {0x01, 4}; }

Codeword horizontal_code() { return {0x01, 3}; }

Codeword vertical_code(int offset) {
    switch (offset) {
        case 0: return {0x01, 1};
        case 1: return {0x03, 3};
        case -1: return {0x02, 3};
        case 2: return {0x03, 6};
        case -2: return {0x02, 6};
        case 3: return {0x03, 7};
        case -3: return {0x02, 7};
        default: throw Error("vertical mode offset out of range");
    }
}

std::optional<Match2D> match_2d(std::uint32_t value, int length) {
    using Kind = Match2D::Kind;
    switch (match_key(value, length)) {
        case match_key(0x01, 1): return Match2D{Kind::Vertical, 0};
        case match_key(0x03, 3): return Match2D{Kind::Vertical, 1};
        case match_key(0x02, 3): return Match2D{Kind::Vertical, -1};
        case match_key(0x01, 3): return Match2D{Kind::Horizontal, 0};
        case match_key(0x01, 4): return Match2D{Kind::Pass, 0};
        case match_key(0x03, 6): return Match2D{Kind::Vertical, 2};
        case match_key(0x02, 6): return Match2D{Kind::Vertical, -2};
        case match_key(0x03, 7): return Match2D{Kind::Vertical, 3};
        case match_key(0x02, 7): return Match2D{Kind::Vertical, -3};
        default: return std::nullopt;
    }
}

}  // namespace cdocr::t4
