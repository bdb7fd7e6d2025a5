#include "cdocr/eval.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "cdocr/errors.hpp"
#include "cdocr/features.hpp"

namespace cdocr {
namespace {

std::string folded(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

LineScore score_line(const std::string& truth, const std::string& predicted) {
    LineScore s;
    s.words = static_cast<int>(tokens_of(truth).size());
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (truth[j] == ' ') continue;
        ++s.chars;
        if (j < predicted.size() && predicted[j] == truth[j]) ++s.correct;
    }
    s.accuracy = s.chars == 0 ? 100.0 : 100.0 * s.correct / s.chars;
    return s;
}

double mean_accuracy(const std::vector<LineScore>& lines) {
    if (lines.empty()) return 0.0;
    double sum = 0.0;
    for (const LineScore& s : lines) sum += s.accuracy;
    return sum / static_cast<double>(lines.size());
}

FeatureGrid grid_for(const CompressedPage& page, ModeKind mode, const ExperimentOptions& opts) {
    const ModeMask mask = ModeMask::only(mode);
    if (opts.bidirectional) return extract_bidirectional(page, mask);
    std::vector<ModeEvent> events = extract_events(page, mask);
    return grid_from_events(events, page.width, page.height);
}

std::vector<std::string> predicted_lines(const HmmModel& model, const FeatureGrid& grid,
                                         const ExperimentOptions& opts) {
    PageSegmentation seg = segment_page(grid, opts.seg);
    std::vector<std::string> out;
    for (const RecognizedLine& line : recognize_page(model, grid, seg, opts.decoder))
        out.push_back(line.text());
    return out;
}

}  // namespace

EvalReport evaluate_lines(const std::vector<std::string>& truth,
                          const std::vector<std::string>& predicted, bool fold_case) {
    EvalReport report;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        std::string t = truth[i];
        std::string p = i < predicted.size() ? predicted[i] : std::string();
        if (fold_case) {
            t = folded(t);
            p = folded(p);
        }
        report.lines.push_back(score_line(t, p));
    }
    report.average = mean_accuracy(report.lines);
    return report;
}

ExperimentReport run_experiment(const std::vector<PageSpec>& pages, const HmmModel& model,
                                const std::vector<ModeKind>& modes,
                                const ExperimentOptions& opts, const GlyphFont& font) {
    ExperimentReport report;
    report.modes = modes;
    report.results.resize(modes.size());

    for (const PageSpec& spec : pages) {
        const RenderResult rendered = render_page(spec, font);
        if (rendered.truth.lines.empty()) continue;
        const CompressedPage compressed =
            encode_page(rendered.page, opts.scheme, opts.eol_present);

        for (const std::string& line : rendered.truth.lines) {
            const LineScore s = score_line(line, line);
            report.line_chars.push_back(s.chars);
            report.line_words.push_back(s.words);
        }
        for (std::size_t m = 0; m < modes.size(); ++m) {
            const FeatureGrid grid = grid_for(compressed, modes[m], opts);
            const EvalReport page_eval =
                evaluate_lines(rendered.truth.lines, predicted_lines(model, grid, opts),
                               model.alphabet.folds_case());
            report.results[m].lines.insert(report.results[m].lines.end(),
                                           page_eval.lines.begin(), page_eval.lines.end());
        }
    }
    for (EvalReport& r : report.results) r.average = mean_accuracy(r.lines);
    return report;
}

const char* mode_name(ModeKind mode) {
    switch (mode) {
        case ModeKind::Pass: return "pass";
        case ModeKind::Vertical: return "vertical";
        case ModeKind::Horizontal: return "horizontal";
    }
    return "?";
}

void print_experiment(std::ostream& out, const ExperimentReport& report) {
    out << std::left << std::setw(6) << "line" << std::right << std::setw(6) << "chars"
        << std::setw(6) << "words";
    for (ModeKind mode : report.modes)
        out << std::setw(14) << mode_name(mode) << std::setw(9) << "%";
    out << '\n';

    out << std::fixed << std::setprecision(2);
    for (std::size_t i = 0; i < report.line_chars.size(); ++i) {
        out << std::left << std::setw(6) << i + 1 << std::right << std::setw(6)
            << report.line_chars[i] << std::setw(6) << report.line_words[i];
        for (const EvalReport& r : report.results) {
            const LineScore& s = r.lines[i];
            out << std::setw(14) << s.correct << std::setw(9) << s.accuracy;
        }
        out << '\n';
    }
    out << std::left << std::setw(6) << "avg" << std::right << std::setw(6) << ""
        << std::setw(6) << "";
    for (const EvalReport& r : report.results)
        out << std::setw(14) << "" << std::setw(9) << r.average;
    out << '\n';
}

std::vector<std::string> corpus_vocabulary(const std::string& corpus_text,
                                           const GlyphFont& font) {
    std::istringstream in(corpus_text);
    std::vector<std::string> vocab;
    std::set<std::string> seen;
    std::string word;
    while (in >> word) {
        if (seen.count(word)) continue;
        bool renderable = true;
        for (char c : word) renderable = renderable && font.has(c);
        if (!renderable) continue;
        seen.insert(word);
        vocab.push_back(word);
    }
    return vocab;
}

PageSpec make_page_spec(std::span<const std::pair<int, int>> shapes,
                        const std::vector<std::string>& vocab, std::uint64_t seed) {
    std::map<std::size_t, std::vector<std::string>> by_length;
    for (const std::string& w : vocab) by_length[w.size()].push_back(w);
    if (by_length.empty()) throw Error("empty vocabulary");

    std::mt19937_64 rng(seed);
    PageSpec spec;
    for (auto [chars, words] : shapes) {
        if (chars < words || words < 1)
            throw Error("line shape needs at least one character per word");
        // Uniform composition of `chars` into `words` positive parts via
        // distinct cut points; resample until every part length is in stock.
        std::vector<int> cuts_pool(static_cast<std::size_t>(chars) - 1);
        for (int i = 0; i < chars - 1; ++i) cuts_pool[static_cast<std::size_t>(i)] = i + 1;
        std::vector<std::size_t> parts;
        bool ok = false;
        for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
            std::vector<int> cuts;
            std::sample(cuts_pool.begin(), cuts_pool.end(), std::back_inserter(cuts),
                        words - 1, rng);
            parts.clear();
            int prev = 0;
            for (int cut : cuts) {
                parts.push_back(static_cast<std::size_t>(cut - prev));
                prev = cut;
            }
            parts.push_back(static_cast<std::size_t>(chars - prev));
            ok = true;
            for (std::size_t len : parts) ok = ok && by_length.count(len) != 0;
        }
        if (!ok)
            throw Error("vocabulary cannot satisfy line shape " + std::to_string(chars) +
                        "/" + std::to_string(words));
        std::string line;
        for (std::size_t len : parts) {
            const std::vector<std::string>& pool = by_length[len];
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            if (!line.empty()) line += ' ';
            line += pool[pick(rng)];
        }
        spec.lines.push_back(line);
    }
    return spec;
}

PageSpec reference_page_spec(const std::vector<std::string>& vocab, std::uint64_t seed) {
    return make_page_spec(kReferenceLineShapes, vocab, seed);
}

std::vector<PageSpec> make_training_specs(const Alphabet& alphabet, int repeats,
                                          std::uint64_t seed) {
    constexpr std::size_t kWordLen = 5;
    constexpr std::size_t kWordsPerLine = 6;
    constexpr std::size_t kLinesPerPage = 10;

    std::mt19937_64 rng(seed);
    std::string symbols = alphabet.symbols();
    std::vector<std::string> lines;
    for (int rep = 0; rep < repeats; ++rep) {
        std::shuffle(symbols.begin(), symbols.end(), rng);
        std::vector<std::string> words;
        for (std::size_t i = 0; i < symbols.size(); i += kWordLen)
            words.push_back(symbols.substr(i, kWordLen));
        for (std::size_t i = 0; i < words.size(); i += kWordsPerLine) {
            std::string line;
            for (std::size_t j = i; j < std::min(i + kWordsPerLine, words.size()); ++j) {
                if (!line.empty()) line += ' ';
                line += words[j];
            }
            lines.push_back(line);
        }
    }

    std::vector<PageSpec> pages;
    for (std::size_t i = 0; i < lines.size(); i += kLinesPerPage) {
        PageSpec spec;
        for (std::size_t j = i; j < std::min(i + kLinesPerPage, lines.size()); ++j)
            spec.lines.push_back(lines[j]);
        pages.push_back(spec);
    }
    return pages;
}

std::vector<TrainingSample> collect_training_samples(const std::vector<PageSpec>& pages,
                                                     const Alphabet& alphabet, ModeKind mode,
                                                     const ExperimentOptions& opts,
                                                     const GlyphFont& font) {
    std::vector<TrainingSample> samples;
    for (const PageSpec& spec : pages) {
        const RenderResult rendered = render_page(spec, font);
        if (rendered.truth.lines.empty()) continue;
        const CompressedPage compressed =
            encode_page(rendered.page, opts.scheme, opts.eol_present);
        const FeatureGrid grid = grid_for(compressed, mode, opts);
        const PageSegmentation seg = segment_page(grid, opts.seg);

        if (seg.lines.size() != rendered.truth.lines.size())
            throw Error("training page: segmented " + std::to_string(seg.lines.size()) +
                        " lines, expected " + std::to_string(rendered.truth.lines.size()));
        for (std::size_t i = 0; i < seg.lines.size(); ++i) {
            const std::vector<std::string> truth_words = tokens_of(rendered.truth.lines[i]);
            const LineSegment& line = seg.lines[i];
            if (line.words.size() != truth_words.size())
                throw Error("training line: segmented " + std::to_string(line.words.size()) +
                            " words, expected " + std::to_string(truth_words.size()));
            for (std::size_t j = 0; j < line.words.size(); ++j) {
                const std::string& word = truth_words[j];
                const std::vector<Band>& cells = line.words[j].chars;
                if (cells.size() != word.size())
                    throw Error("training word '" + word + "': segmented " +
                                std::to_string(cells.size()) + " cells");
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    const int sym = alphabet.index_of(word[k]);
                    if (sym < 0)
                        throw Error(std::string("training symbol '") + word[k] +
                                    "' outside the alphabet");
                    samples.push_back({sym, observation_from_grid(grid, line.rows, cells[k],
                                                                  font.cell_height(),
                                                                  font.cell_width())});
                }
            }
        }
    }
    return samples;
}

}  // namespace cdocr
