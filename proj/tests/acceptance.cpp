// Acceptance gate: nine self-contained checks over the installed pipeline,
// one PASS/FAIL line each. The process exit code is the number of failures,
// so a green run exits 0. Tolerances and budgets are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cdocr/ccitt.hpp"
#include "cdocr/errors.hpp"
#include "cdocr/eval.hpp"
#include "cdocr/features.hpp"
#include "cdocr/glyph_font.hpp"
#include "cdocr/hmm.hpp"
#include "cdocr/render.hpp"
#include "cdocr/segment.hpp"
#include "cdocr/t4_tables.hpp"
#include "cdocr/tiff.hpp"
#include "support.hpp"
#include "t4_reference.hpp"

using namespace cdocr;

namespace {

constexpr double kRoundTripBudgetSeconds = 10.0;
constexpr double kExperimentBudgetSeconds = 60.0;
constexpr int kMinTruncationPoints = 10000;
constexpr int kMinTableCodewords = 20;
constexpr double kHeadlineMean = 94.40;
constexpr double kHeadlineTolerance = 0.01;
constexpr double kMinPassAverage = 90.0;
constexpr double kMaxHorizontalAverage = 15.0;
constexpr double kStochasticTolerance = 1e-9;
constexpr double kLoglikTolerance = 1e-9;

struct Outcome {
    bool ok = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(double value, int precision = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(precision);
    out << value;
    return out.str();
}

const std::string& corpus_text() {
    static const std::string text = [] {
        std::ifstream in(CDOCR_CORPUS);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }();
    return text;
}

// Trained exactly as the CLI does it for the reference experiment; shared by
// the experiment and model-consistency checks. Built once on first use.
const HmmModel& experiment_model() {
    static const HmmModel model = [] {
        const Alphabet alphabet = Alphabet::standard();
        const GlyphFont& font = GlyphFont::builtin();
        const std::vector<TrainingSample> samples = collect_training_samples(
            make_training_specs(alphabet, 3, 1), alphabet, ModeKind::Pass);
        return train_model(alphabet, samples, corpus_text(), font.cell_height(),
                           font.cell_width());
    }();
    return model;
}

// ---------------------------------------------------------------------------
// 1. Random bitmaps survive every coding scheme.

Outcome criterion1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    int round_trips = 0;
    for (int i = 0; i < 1000; ++i) {
        const Bitmap bm = tf::random_bitmap(rng);
        for (const CodingScheme& scheme : tf::all_schemes()) {
            const CompressedPage page = encode_page(bm, scheme);
            if (!(decode_page(page) == bm))
                return {false, "round trip mismatch at bitmap " + std::to_string(i)};
            ++round_trips;
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= kRoundTripBudgetSeconds)
        return {false, "took " + format(secs) + " s, budget " +
                           format(kRoundTripBudgetSeconds) + " s"};
    return {true, std::to_string(round_trips) + " page round trips (1000 bitmaps x 3 schemes) in " +
                      format(secs) + " s"};
}

// ---------------------------------------------------------------------------
// 2. The compressed-domain extractor reports the decoder's events.

Outcome criterion2() {
    std::mt19937_64 rng(2);
    int pages = 0;
    long long events = 0;

    const auto agree = [&](const CompressedPage& page) {
        std::vector<ModeEvent> direct = extract_events(page, ModeMask::all());
        std::vector<ModeEvent> tapped = tf::tap_events(page);
        std::sort(direct.begin(), direct.end());
        std::sort(tapped.begin(), tapped.end());
        if (direct != tapped) return false;
        ++pages;
        events += static_cast<long long>(direct.size());
        return true;
    };

    const std::vector<CodingScheme> schemes = tf::twod_schemes();
    for (int i = 0; i < 200; ++i) {
        const Bitmap bm = tf::random_bitmap(rng);
        const CodingScheme scheme = schemes[static_cast<std::size_t>(i) % schemes.size()];
        const bool eol = scheme.kind == SchemeKind::G3_2D && i % 4 < 2;
        if (!agree(encode_page(bm, scheme, eol)))
            return {false, "event mismatch on random page " + std::to_string(i)};
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Bitmap bm = tf::text_page(seed);
        const CompressedPage page =
            seed % 2 == 0 ? encode_page(bm, {SchemeKind::G4, 2})
                          : encode_page(bm, {SchemeKind::G3_2D, 2}, true);
        if (!agree(page)) return {false, "event mismatch on text page " + std::to_string(seed)};
    }
    return {true, std::to_string(pages) + " pages, " + std::to_string(events) +
                      " events, extractor identical to the decode tap"};
}

// ---------------------------------------------------------------------------
// 3. Code tables against an independent transcription.

Outcome criterion3() {
    int compared = 0;
    std::string failure;

    const auto bits_of = [](t4::Codeword cw) {
        std::string s;
        for (int i = cw.length - 1; i >= 0; --i) s += ((cw.value >> i) & 1) ? '1' : '0';
        return s;
    };
    const auto value_of = [](const char* bits) {
        std::uint32_t v = 0;
        for (const char* p = bits; *p; ++p) v = (v << 1) | static_cast<std::uint32_t>(*p - '0');
        return v;
    };
    const auto length_of = [](const char* bits) {
        return static_cast<int>(std::string(bits).size());
    };

    const auto check_run = [&](bool black, const t4ref::RunCode& ref, bool makeup) {
        const t4::Codeword got =
            makeup ? t4::makeup_code(black, ref.run) : t4::terminating_code(black, ref.run);
        if (bits_of(got) != ref.bits) {
            failure = std::string(black ? "black" : "white") + " run " +
                      std::to_string(ref.run) + ": coded " + bits_of(got) + ", table says " +
                      ref.bits;
            return false;
        }
        const auto match = t4::match_run(black, value_of(ref.bits), length_of(ref.bits));
        if (!match || match->run != ref.run || match->terminating == makeup) {
            failure = std::string(black ? "black" : "white") + " run " +
                      std::to_string(ref.run) + " does not match back";
            return false;
        }
        ++compared;
        return true;
    };

    if (bits_of(t4::terminating_code(false, 0)) != "00110101")
        return {false, "white run 0 is not 00110101"};

    for (const t4ref::RunCode& ref : t4ref::kWhiteTerminating)
        if (!check_run(false, ref, false)) return {false, failure};
    for (const t4ref::RunCode& ref : t4ref::kBlackTerminating)
        if (!check_run(true, ref, false)) return {false, failure};
    for (const t4ref::RunCode& ref : t4ref::kWhiteMakeup)
        if (!check_run(false, ref, true)) return {false, failure};
    for (const t4ref::RunCode& ref : t4ref::kBlackMakeup)
        if (!check_run(true, ref, true)) return {false, failure};
    for (const t4ref::RunCode& ref : t4ref::kExtendedMakeup) {
        if (!check_run(false, ref, true)) return {false, failure};
        if (!check_run(true, ref, true)) return {false, failure};
    }

    const auto check_mode = [&](t4::Codeword got, const t4ref::ModeCode& ref) {
        if (bits_of(got) != ref.bits) {
            failure = std::string("mode ") + ref.name + ": coded " + bits_of(got) +
                      ", table says " + ref.bits;
            return false;
        }
        ++compared;
        return true;
    };
    if (!check_mode(t4::pass_code(), t4ref::kPass)) return {false, failure};
    if (!check_mode(t4::horizontal_code(), t4ref::kHorizontal)) return {false, failure};
    for (const t4ref::ModeCode& ref : t4ref::kVertical)
        if (!check_mode(t4::vertical_code(ref.vertical_offset), ref)) return {false, failure};

    if (bits_of(t4::kEol) != t4ref::kEolBits) return {false, "EOL codeword mismatch"};
    ++compared;

    if (compared < kMinTableCodewords)
        return {false, "only " + std::to_string(compared) + " codewords compared"};
    return {true, std::to_string(compared) + " codewords match the independent transcription"};
}

// ---------------------------------------------------------------------------
// 4. TIFF containers round trip, and no truncation escapes the error types.

Outcome criterion4() {
    std::mt19937_64 rng(4);
    std::vector<std::pair<std::vector<std::uint8_t>, Bitmap>> files;

    const auto add = [&](const Bitmap& bm, CodingScheme scheme, bool eol) {
        files.emplace_back(tiff_write_page(encode_page(bm, scheme, eol)), bm);
    };
    add(tf::text_page(3), {SchemeKind::G4, 2}, false);
    add(tf::text_page(4), {SchemeKind::G3_2D, 2}, true);

    // Noise pages are incompressible, so a few of them push the total past
    // the truncation-point quota.
    std::size_t total = files[0].first.size() + files[1].first.size();
    for (std::uint64_t seed = 0; total < static_cast<std::size_t>(kMinTruncationPoints) + 500;
         ++seed) {
        Bitmap bm(160, 110);
        std::bernoulli_distribution bit(0.5);
        for (int r = 0; r < bm.height(); ++r)
            for (int c = 0; c < bm.width(); ++c) bm.set(r, c, bit(rng) ? 1 : 0);
        add(bm, seed % 2 == 0 ? CodingScheme{SchemeKind::G3_1D, 2}
                              : CodingScheme{SchemeKind::G4, 2},
            seed % 2 == 0);
        total += files.back().first.size();
    }

    long long points = 0;
    for (const auto& [file, original] : files) {
        CompressedPage parsed = tiff_read_page(file);
        if (!(decode_page(parsed) == original)) return {false, "full file decode mismatch"};

        for (std::size_t len = 0; len < file.size(); ++len) {
            const std::vector<std::uint8_t> prefix(file.begin(),
                                                   file.begin() + static_cast<long>(len));
            try {
                decode_page(tiff_read_page(prefix));
                return {false, "prefix of " + std::to_string(len) + " bytes parsed silently"};
            } catch (const Error&) {
                ++points;
            } catch (...) {
                return {false, "prefix of " + std::to_string(len) +
                                   " bytes raised a foreign exception"};
            }
        }
    }
    if (points < kMinTruncationPoints)
        return {false, "only " + std::to_string(points) + " truncation points exercised"};
    return {true, std::to_string(points) + " truncation points over " +
                      std::to_string(files.size()) + " files, every one a clean error"};
}

// ---------------------------------------------------------------------------
// 5. Segmentation closure on rendered reference pages.

Outcome criterion5() {
    const std::vector<std::string> vocab = corpus_vocabulary(corpus_text());
    const GlyphFont& font = GlyphFont::builtin();
    int lines_checked = 0, cells_checked = 0;

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const RenderResult rendered = render_page(reference_page_spec(vocab, seed), font);
        const CompressedPage page = encode_page(rendered.page, {SchemeKind::G4, 2});
        const FeatureGrid grid = grid_from_events(
            extract_events(page, ModeMask::only(ModeKind::Pass)), page.width, page.height);
        const PageSegmentation seg = segment_page(grid);

        if (seg.lines.size() != kReferenceLineShapes.size())
            return {false, "page " + std::to_string(seed) + ": " +
                               std::to_string(seg.lines.size()) + " lines segmented"};
        for (std::size_t i = 0; i < seg.lines.size(); ++i) {
            const LineSegment& line = seg.lines[i];
            const int top = rendered.truth.line_tops[i];
            // Pass events of a text line live on the blank rows under each
            // glyph slot: rows top+3 .. top+24 inclusive.
            if (line.rows.start != top + 3 || line.rows.end != top + 25)
                return {false, "page " + std::to_string(seed) + " line " + std::to_string(i) +
                                   ": band [" + std::to_string(line.rows.start) + ", " +
                                   std::to_string(line.rows.end) + ") off the glyph rows"};
            if (static_cast<int>(line.words.size()) != kReferenceLineShapes[i].second)
                return {false, "page " + std::to_string(seed) + " line " + std::to_string(i) +
                                   ": " + std::to_string(line.words.size()) + " words, layout says " +
                                   std::to_string(kReferenceLineShapes[i].second)};

            std::vector<Band> cells;
            for (const WordSegment& word : line.words)
                cells.insert(cells.end(), word.chars.begin(), word.chars.end());
            const std::vector<CharBox>& boxes = rendered.truth.boxes[i];
            if (cells.size() != boxes.size() ||
                static_cast<int>(cells.size()) != kReferenceLineShapes[i].first)
                return {false, "page " + std::to_string(seed) + " line " + std::to_string(i) +
                                   ": " + std::to_string(cells.size()) + " char cells, layout says " +
                                   std::to_string(kReferenceLineShapes[i].first)};
            for (std::size_t k = 0; k < cells.size(); ++k) {
                // The first event column of a glyph is its anchor post.
                if (cells[k].start != boxes[k].col0 + 6)
                    return {false, "page " + std::to_string(seed) + " line " +
                                       std::to_string(i) + " cell " + std::to_string(k) +
                                       " anchored at " + std::to_string(cells[k].start)};
                ++cells_checked;
            }
            ++lines_checked;
        }
    }
    return {true, "50 pages, " + std::to_string(lines_checked) + " line bands and " +
                      std::to_string(cells_checked) + " char cells all on truth geometry"};
}

// ---------------------------------------------------------------------------
// 6. Viterbi against exhaustive path enumeration.

namespace viterbi_oracle {

HmmModel toy_model(const std::string& symbols, int rows, int cols, std::mt19937_64& rng) {
    HmmModel m;
    m.alphabet = Alphabet(symbols);
    m.cell_height = rows;
    m.cell_width = cols;
    const int n = m.alphabet.size();
    std::uniform_real_distribution<double> weight(0.05, 1.0), prob(0.05, 0.95);

    const auto normalized = [&](int count) {
        std::vector<double> v(static_cast<std::size_t>(count));
        double sum = 0;
        for (double& x : v) sum += (x = weight(rng));
        for (double& x : v) x /= sum;
        return v;
    };
    m.initial = normalized(n);
    m.unigram = normalized(n);
    m.transition.clear();
    for (int r = 0; r < n; ++r) {
        const std::vector<double> row = normalized(n);
        m.transition.insert(m.transition.end(), row.begin(), row.end());
    }
    m.emission.resize(static_cast<std::size_t>(n) * rows * cols);
    for (double& p : m.emission) p = prob(rng);
    m.finalize();
    return m;
}

Observation random_obs(std::mt19937_64& rng, int rows, int cols) {
    Observation obs(rows, cols);
    std::bernoulli_distribution bit(0.5);
    for (auto& cell : obs.cells) cell = bit(rng) ? 1 : 0;
    return obs;
}

// Accumulates in the decoder's operation order so exact ties stay exact.
double path_score(const HmmModel& m, const std::vector<std::vector<double>>& emis,
                  const std::vector<int>& path) {
    double s = m.initial_log[static_cast<std::size_t>(path[0])] + emis[0][static_cast<std::size_t>(path[0])];
    const int n = m.alphabet.size();
    for (std::size_t t = 1; t < path.size(); ++t) {
        s = s + m.transition_log[static_cast<std::size_t>(path[t - 1]) * n + path[t]];
        s = s + emis[t][static_cast<std::size_t>(path[t])];
    }
    return s;
}

bool reverse_less(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Best path by enumeration; float-equal ties resolve to the reverse-
// lexicographically smallest path, which is what per-step lowest-index
// backtracking produces.
std::string enumerate_best(const HmmModel& m, const std::vector<Observation>& word) {
    const int n = m.alphabet.size();
    std::vector<std::vector<double>> emis;
    for (const Observation& obs : word) emis.push_back(emission_loglik(m, obs));

    std::vector<int> path(word.size(), 0), best;
    double best_score = 0;
    for (;;) {
        const double score = path_score(m, emis, path);
        if (best.empty() || score > best_score ||
            (score == best_score && reverse_less(path, best))) {
            best = path;
            best_score = score;
        }
        std::size_t i = 0;
        while (i < path.size() && ++path[i] == n) path[i++] = 0;
        if (i == path.size()) break;
    }
    std::string out;
    for (int s : best) out += m.alphabet.at(s);
    return out;
}

}  // namespace viterbi_oracle

Outcome criterion6() {
    using namespace viterbi_oracle;
    std::mt19937_64 rng(6);
    int cases = 0;

    for (int n = 1; n <= 4; ++n) {
        const std::string symbols = std::string("abcd").substr(0, static_cast<std::size_t>(n));
        for (std::size_t len = 1; len <= 4; ++len) {
            for (int trial = 0; trial < 10; ++trial) {
                const HmmModel m = toy_model(symbols, 3, 2, rng);
                std::vector<Observation> word;
                for (std::size_t t = 0; t < len; ++t) word.push_back(random_obs(rng, 3, 2));
                ++cases;
                if (decode_viterbi(m, word) != enumerate_best(m, word))
                    return {false, "disagreement at n=" + std::to_string(n) +
                                       " len=" + std::to_string(len)};
            }

            // Exact-tie model: every table entry equal, so all paths score
            // bit-identically and the tie-break alone decides.
            HmmModel flat = toy_model(symbols, 3, 2, rng);
            const int count = flat.alphabet.size();
            flat.initial.assign(static_cast<std::size_t>(count), 1.0 / count);
            flat.unigram = flat.initial;
            flat.transition.assign(static_cast<std::size_t>(count) * count, 1.0 / count);
            flat.emission.assign(flat.emission.size(), 0.5);
            flat.finalize();
            std::vector<Observation> word;
            for (std::size_t t = 0; t < len; ++t) word.push_back(random_obs(rng, 3, 2));
            ++cases;
            const std::string got = decode_viterbi(flat, word);
            if (got != enumerate_best(flat, word) || got != std::string(len, 'a'))
                return {false, "tie case broke at n=" + std::to_string(n) +
                                   " len=" + std::to_string(len)};
        }
    }
    return {true, std::to_string(cases) + " exhaustive comparisons agree, ties included"};
}

// ---------------------------------------------------------------------------
// 7. The reference experiment orders the modes as published.

Outcome criterion7() {
    const auto t0 = Clock::now();
    const HmmModel& model = experiment_model();
    const std::vector<PageSpec> pages = {
        reference_page_spec(corpus_vocabulary(corpus_text()), 1)};
    const std::vector<ModeKind> modes = {ModeKind::Pass, ModeKind::Vertical,
                                         ModeKind::Horizontal};
    const ExperimentReport report = run_experiment(pages, model, modes);
    const double secs = seconds_since(t0);

    const double pass = report.results[0].average;
    const double vertical = report.results[1].average;
    const double horizontal = report.results[2].average;
    const std::string summary = "pass " + format(pass) + " / vertical " + format(vertical) +
                                " / horizontal " + format(horizontal) + " in " + format(secs) +
                                " s";
    if (!(pass > vertical && vertical > horizontal))
        return {false, "mode ordering broken: " + summary};
    if (pass < kMinPassAverage) return {false, "pass average below 90: " + summary};
    if (horizontal > kMaxHorizontalAverage)
        return {false, "horizontal average above 15: " + summary};
    if (secs >= kExperimentBudgetSeconds) return {false, "over budget: " + summary};
    return {true, summary};
}

// ---------------------------------------------------------------------------
// 8. The headline accuracy figure is the mean of the tabulated lines.

Outcome criterion8() {
    constexpr double kPassByLine[11] = {92.85, 94.11, 100.0, 97.14, 95.0, 92.5,
                                        93.47, 96.0,  96.0,  94.11, 87.27};
    double sum = 0;
    for (double x : kPassByLine) sum += x;
    const double mean = sum / 11;
    if (std::abs(mean - kHeadlineMean) > kHeadlineTolerance)
        return {false, "mean of tabulated lines is " + format(mean, 4)};
    return {true, "mean of the 11 tabulated pass accuracies is " + format(mean, 4) +
                      ", within " + format(kHeadlineTolerance) + " of " + format(kHeadlineMean)};
}

// ---------------------------------------------------------------------------
// 9. The trained model is stochastic and its likelihoods factor correctly.

Outcome criterion9() {
    const HmmModel& model = experiment_model();
    const int n = model.alphabet.size();

    const auto sums_to_one = [](const std::vector<double>& v, std::size_t begin,
                                std::size_t count) {
        double sum = 0;
        for (std::size_t i = begin; i < begin + count; ++i) sum += v[i];
        return std::abs(sum - 1.0) <= kStochasticTolerance;
    };
    if (!sums_to_one(model.initial, 0, model.initial.size()))
        return {false, "initial probabilities do not sum to 1"};
    if (!sums_to_one(model.unigram, 0, model.unigram.size()))
        return {false, "unigram probabilities do not sum to 1"};
    for (int r = 0; r < n; ++r)
        if (!sums_to_one(model.transition, static_cast<std::size_t>(r) * n,
                         static_cast<std::size_t>(n)))
            return {false, "transition row " + std::to_string(r) + " does not sum to 1"};
    for (double p : model.emission)
        if (!(p > 0.0 && p < 1.0)) return {false, "emission probability outside (0, 1)"};

    // Likelihoods recomputed the slow way: a straight product of per-cell
    // Bernoulli factors in extended precision, then one log.
    std::mt19937_64 rng(9);
    std::bernoulli_distribution bit(0.5);
    const int cells = model.cells();
    int compared = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Observation obs(model.cell_height, model.cell_width);
        for (auto& cell : obs.cells) cell = bit(rng) ? 1 : 0;
        const std::vector<double> fast = emission_loglik(model, obs);
        for (int s = 0; s < n; ++s) {
            long double product = 1.0L;
            const std::size_t base = static_cast<std::size_t>(s) * cells;
            for (int i = 0; i < cells; ++i) {
                const long double p = model.emission[base + static_cast<std::size_t>(i)];
                product *= obs.cells[static_cast<std::size_t>(i)] ? p : 1.0L - p;
            }
            if (std::abs(fast[static_cast<std::size_t>(s)] -
                         static_cast<double>(std::log(product))) > kLoglikTolerance)
                return {false, "log-likelihood drifts past 1e-9 for symbol " +
                                   std::to_string(s)};
            ++compared;
        }
    }
    return {true, "stochastic rows hold to 1e-9; " + std::to_string(compared) +
                      " log-likelihoods match the direct product"};
}

}  // namespace

int main() {
    Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                               criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i]();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unexpected exception: ") + e.what()};
        }
        if (!outcome.ok) ++failures;
        std::cout << "criterion " << i + 1 << ": " << (outcome.ok ? "PASS" : "FAIL") << " ("
                  << outcome.detail << ")\n";
    }
    return failures;
}
