#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdocr/segment.hpp"

namespace cdocr {

// Recognition symbol set. Symbol order defines state indices; ties in
// decoding resolve toward the lowest index. A set containing letters but no
// uppercase folds lookups to lowercase.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string symbols);

    // Lowercase, uppercase, digits, then ( ) . , ! ? " -- 69 symbols.
    static Alphabet standard();
    // Folded variant without the uppercase block -- 43 symbols.
    static Alphabet case_insensitive();

    int size() const { return static_cast<int>(symbols_.size()); }
    char at(int i) const { return symbols_[i]; }
    int index_of(char c) const;
    const std::string& symbols() const { return symbols_; }
    bool folds_case() const { return folds_case_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::string symbols_;
    bool folds_case_ = false;
};

// Binary feature window cut from a grid, row-major.
struct Observation {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> cells;

    Observation() = default;
    Observation(int rows, int cols)
        : rows(rows), cols(cols), cells(static_cast<std::size_t>(rows) * cols, 0) {}

    std::uint8_t at(int r, int c) const {
        return cells[static_cast<std::size_t>(r) * cols + c];
    }
    void set(int r, int c, std::uint8_t v) {
        cells[static_cast<std::size_t>(r) * cols + c] = v;
    }

    bool operator==(const Observation&) const = default;
};

// Cuts the window whose top row is the line band's first row and whose left
// column is the char band's first column; points outside are cropped, absent
// cells stay zero.
Observation observation_from_grid(const FeatureGrid& grid, const Band& line,
                                  const Band& character, int rows, int cols);

struct TrainingSample {
    int symbol = 0;  // alphabet index
    Observation obs;
};

// Per-symbol Bernoulli cell probabilities with add-one smoothing:
// p = (count + 1) / (samples + 2). Layout: symbol-major, then row-major
// cells. Every alphabet symbol needs at least one sample.
std::vector<double> train_emissions(const Alphabet& alphabet,
                                    const std::vector<TrainingSample>& samples, int rows,
                                    int cols);

// Word-start, unigram, and in-word bigram statistics from whitespace-split
// corpus text, add-one smoothed; characters outside the alphabet are
// dropped. All in probability space.
struct LanguageStats {
    std::vector<double> initial;     // n
    std::vector<double> unigram;     // n
    std::vector<double> transition;  // n*n, row = previous symbol
};
LanguageStats train_language(const Alphabet& alphabet, const std::string& corpus_text);

struct HmmModel {
    Alphabet alphabet;
    int cell_height = 25;
    int cell_width = 16;
    std::vector<double> initial;     // n
    std::vector<double> unigram;     // n
    std::vector<double> transition;  // n*n
    std::vector<double> emission;    // n * cell_height * cell_width

    int cells() const { return cell_height * cell_width; }

    // Log caches used by the decoders; built by finalize().
    std::vector<double> initial_log, unigram_log, transition_log;
    std::vector<double> emission_log1, emission_log0;
    void finalize();
};

HmmModel train_model(const Alphabet& alphabet, const std::vector<TrainingSample>& samples,
                     const std::string& corpus_text, int cell_height, int cell_width);

// Per-symbol log-likelihood of one observation under the Bernoulli grids.
std::vector<double> emission_loglik(const HmmModel& model, const Observation& obs);

// Max-probability state sequence for one word; per-step and final ties both
// resolve to the lowest state index.
std::string decode_viterbi(const HmmModel& model, const std::vector<Observation>& word);

// Position-independent decoder: argmax of unigram prior times emission.
std::string decode_simplified(const HmmModel& model, const std::vector<Observation>& word);

enum class DecoderKind : std::uint8_t { Viterbi, Simplified };

struct RecognizedWord {
    Band cols;
    std::string text;
};
struct RecognizedLine {
    Band rows;
    std::vector<RecognizedWord> words;

    std::string text() const;  // words joined by single spaces
};

std::vector<RecognizedLine> recognize_page(const HmmModel& model, const FeatureGrid& grid,
                                           const PageSegmentation& seg,
                                           DecoderKind decoder = DecoderKind::Viterbi);

// Model file: "HMM v1 <n> <cell_height> <cell_width>", the symbol line, then
// INITIAL/UNIGRAM/TRANSITION/EMISSION blocks of probabilities at 12
// significant digits.
void save_model(std::ostream& out, const HmmModel& model);
HmmModel load_model(std::istream& in);
void save_model_file(const std::string& path, const HmmModel& model);
HmmModel load_model_file(const std::string& path);

// Observation sample files: "OBS <rows> <cols> <count>" followed by count
// blocks of rows lines with '.'/'#' cells. One file per symbol, named
// sym_<ascii>.obs.
void save_observations(std::ostream& out, const std::vector<Observation>& obs);
std::vector<Observation> load_observations(std::istream& in);
std::string observation_file_name(char symbol);

}  // namespace cdocr
