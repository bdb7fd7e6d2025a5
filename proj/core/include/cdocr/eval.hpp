#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdocr/hmm.hpp"
#include "cdocr/render.hpp"

namespace cdocr {

// Positional scoring: a non-space truth character counts as correct when the
// prediction has the same character at the same index. Comparison is capped
// at the shorter line; unmatched truth lines score zero. Accuracy is percent
// per line, and summaries are unweighted means over lines.
struct LineScore {
    int chars = 0;    // scored (non-space) truth positions
    int words = 0;    // whitespace-separated truth tokens
    int correct = 0;
    double accuracy = 0.0;
};

struct EvalReport {
    std::vector<LineScore> lines;
    double average = 0.0;
};

EvalReport evaluate_lines(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predicted, bool fold_case = false);

struct ExperimentOptions {
    CodingScheme scheme{SchemeKind::G4, 2};
    bool eol_present = false;  // honored by G3 schemes only
    SegmentParams seg{};
    DecoderKind decoder = DecoderKind::Viterbi;
    bool bidirectional = false;
};

// Full pipeline per (page, mode): render, compress, extract that mode's
// events, segment, recognize, score against the rendered truth. Line rows
// concatenate across pages in order.
struct ExperimentReport {
    std::vector<int> line_chars;
    std::vector<int> line_words;
    std::vector<ModeKind> modes;
    std::vector<EvalReport> results;  // parallel to modes
};

ExperimentReport run_experiment(const std::vector<PageSpec>& pages, const HmmModel& model,
                                const std::vector<ModeKind>& modes,
                                const ExperimentOptions& opts = {},
                                const GlyphFont& font = GlyphFont::builtin());

const char* mode_name(ModeKind mode);
void print_experiment(std::ostream& out, const ExperimentReport& report);

// Fixture generation. The reference layout is an 11-line page whose
// (non-space characters, words) shape per line is fixed; text is drawn from
// a vocabulary by a seeded generator, so identical seeds give identical
// pages.
inline constexpr std::array<std::pair<int, int>, 11> kReferenceLineShapes = {{
    {14, 4}, {17, 4}, {34, 6}, {35, 7}, {40, 9}, {40, 7},
    {46, 8}, {50, 10}, {50, 11}, {51, 9}, {55, 14},
}};

// Whitespace tokens of the corpus, deduplicated, font-renderable; order of
// first appearance.
std::vector<std::string> corpus_vocabulary(const std::string& corpus_text,
                                           const GlyphFont& font = GlyphFont::builtin());

// One page line per shape: `words` vocabulary words whose lengths sum to
// `chars`. Throws Error when the vocabulary cannot satisfy a shape.
PageSpec make_page_spec(std::span<const std::pair<int, int>> shapes,
                        const std::vector<std::string>& vocab, std::uint64_t seed);
PageSpec reference_page_spec(const std::vector<std::string>& vocab, std::uint64_t seed);

// Training pages containing every symbol of the alphabet `repeats` times,
// chunked into nonsense words; one shuffled sweep of the alphabet per repeat.
std::vector<PageSpec> make_training_specs(const Alphabet& alphabet, int repeats,
                                          std::uint64_t seed);

// Renders the pages, runs compression + extraction + segmentation, and pairs
// recovered character cells with the known text. Pages whose segmentation
// disagrees with the truth shape are rejected with Error: training input
// must segment cleanly.
std::vector<TrainingSample> collect_training_samples(const std::vector<PageSpec>& pages,
                                                     const Alphabet& alphabet, ModeKind mode,
                                                     const ExperimentOptions& opts = {},
                                                     const GlyphFont& font = GlyphFont::builtin());

}  // namespace cdocr
