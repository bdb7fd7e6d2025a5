#include <doctest.h>

#include <random>
#include <vector>

#include "cdocr/errors.hpp"
#include "cdocr/runlength.hpp"

using namespace cdocr;

namespace {

std::vector<std::uint8_t> random_pixels(std::mt19937_64& rng, int width) {
    std::uniform_real_distribution<double> dd(0.0, 1.0);
    std::bernoulli_distribution bit(dd(rng));
    std::vector<std::uint8_t> px(width);
    for (auto& p : px) p = bit(rng) ? 1 : 0;
    return px;
}

}  // namespace

TEST_SUITE("runlength") {

TEST_CASE("all-white and all-black lines") {
    const std::vector<std::uint8_t> white(7, 0), black(7, 1);
    CHECK(runlength_encode_line(white).runs == std::vector<int>{7});
    CHECK(runlength_encode_line(black).runs == std::vector<int>{0, 7});
}

TEST_CASE("a line starting black gets a leading zero run") {
    const std::vector<std::uint8_t> px{1, 1, 0, 0, 0, 1};
    const RunLengthLine line = runlength_encode_line(px);
    CHECK(line.runs == std::vector<int>{0, 2, 3, 1});
    CHECK(line.width() == 6);
    // The line end is not a change, so the final black run contributes none.
    CHECK(changes_from_runs(line) == std::vector<int>{0, 2, 5});
}

TEST_CASE("encode then decode is the identity on random lines") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> wd(1, 128);
        const auto px = random_pixels(rng, wd(rng));
        const RunLengthLine line = runlength_encode_line(px);
        CHECK(runlength_decode_line(line, static_cast<int>(px.size())) == px);
        CHECK(line.width() == static_cast<int>(px.size()));
    }
}

TEST_CASE("runs and change lists are two views of the same line") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> wd(1, 96);
        const int width = wd(rng);
        const auto px = random_pixels(rng, width);
        const RunLengthLine line = runlength_encode_line(px);
        const std::vector<int> changes = changes_from_pixels(px);

        CHECK(changes_from_runs(line) == changes);
        CHECK(runs_from_changes(changes, width) == line);
        CHECK(pixels_from_changes(changes, width) == px);
    }
}

TEST_CASE("decoding against the wrong width reports the sum mismatch") {
    const RunLengthLine line{{3, 4}};
    try {
        runlength_decode_line(line, 10);
        FAIL("expected a DecodeError");
    } catch (const DecodeError& e) {
        CHECK(e.kind == DecodeError::Kind::SumMismatch);
    }
}

TEST_CASE("change positions are strictly increasing and in bounds") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> wd(1, 64);
        const int width = wd(rng);
        const auto changes = changes_from_pixels(random_pixels(rng, width));
        for (std::size_t i = 0; i + 1 < changes.size(); ++i)
            CHECK(changes[i] < changes[i + 1]);
        for (int c : changes) {
            CHECK(c >= 0);
            CHECK(c < width);
        }
    }
}

}  // TEST_SUITE
