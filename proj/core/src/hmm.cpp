#include "cdocr/hmm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cdocr/errors.hpp"

namespace cdocr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr const char* kSpecials = "().,!?\"";

double safe_log(double p) { return p > 0 ? std::log(p) : kNegInf; }

}  // namespace

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    bool has_lower = false, has_upper = false;
    for (char c : symbols_) {
        has_lower |= std::islower(static_cast<unsigned char>(c)) != 0;
        has_upper |= std::isupper(static_cast<unsigned char>(c)) != 0;
    }
    folds_case_ = has_lower && !has_upper;
}

Alphabet Alphabet::standard() {
    std::string s;
    for (char c = 'a'; c <= 'z'; ++c) s.push_back(c);
    for (char c = 'A'; c <= 'Z'; ++c) s.push_back(c);
    for (char c = '0'; c <= '9'; ++c) s.push_back(c);
    s += kSpecials;
    return Alphabet(s);
}

Alphabet Alphabet::case_insensitive() {
    std::string s;
    for (char c = 'a'; c <= 'z'; ++c) s.push_back(c);
    for (char c = '0'; c <= '9'; ++c) s.push_back(c);
    s += kSpecials;
    return Alphabet(s);
}

int Alphabet::index_of(char c) const {
    if (folds_case_) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const auto pos = symbols_.find(c);
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

Observation observation_from_grid(const FeatureGrid& grid, const Band& line,
                                  const Band& character, int rows, int cols) {
    Observation obs(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const int row = line.start + r;
        auto it = grid.points.lower_bound({row, character.start});
        for (; it != grid.points.end() && it->first == row && it->second < character.start + cols;
             ++it)
            obs.set(r, it->second - character.start, 1);
    }
    return obs;
}

std::vector<double> train_emissions(const Alphabet& alphabet,
                                    const std::vector<TrainingSample>& samples, int rows,
                                    int cols) {
    const int n = alphabet.size();
    const int cells = rows * cols;
    std::vector<int> counts(static_cast<std::size_t>(n) * cells, 0);
    std::vector<int> totals(n, 0);
    for (const TrainingSample& s : samples) {
        if (s.symbol < 0 || s.symbol >= n)
            throw ModelError(ModelError::Kind::DimensionMismatch,
                             "sample symbol index out of range");
        if (s.obs.rows != rows || s.obs.cols != cols)
            throw ModelError(ModelError::Kind::DimensionMismatch,
                             "sample size differs from emission grid");
        ++totals[s.symbol];
        for (int i = 0; i < cells; ++i)
            counts[static_cast<std::size_t>(s.symbol) * cells + i] += s.obs.cells[i] ? 1 : 0;
    }
    std::vector<double> emission(static_cast<std::size_t>(n) * cells);
    for (int s = 0; s < n; ++s) {
        if (totals[s] == 0)
            throw ModelError(ModelError::Kind::MissingSymbol,
                             std::string("no training sample for symbol '") + alphabet.at(s) +
                                 "'");
        for (int i = 0; i < cells; ++i)
            emission[static_cast<std::size_t>(s) * cells + i] =
                (counts[static_cast<std::size_t>(s) * cells + i] + 1.0) / (totals[s] + 2.0);
    }
    return emission;
}

LanguageStats train_language(const Alphabet& alphabet, const std::string& corpus_text) {
    const int n = alphabet.size();
    std::vector<long long> initial(n, 0), unigram(n, 0);
    std::vector<long long> transition(static_cast<std::size_t>(n) * n, 0);
    long long words = 0, chars = 0;

    std::istringstream in(corpus_text);
    std::string token;
    while (in >> token) {
        std::vector<int> seq;
        for (char c : token) {
            const int idx = alphabet.index_of(c);
            if (idx >= 0) seq.push_back(idx);
        }
        if (seq.empty()) continue;
        ++words;
        ++initial[seq[0]];
        for (std::size_t i = 0; i < seq.size(); ++i) {
            ++chars;
            ++unigram[seq[i]];
            if (i > 0) ++transition[static_cast<std::size_t>(seq[i - 1]) * n + seq[i]];
        }
    }
    if (words == 0)
        throw ModelError(ModelError::Kind::EmptyCorpus, "corpus has no usable words");

    LanguageStats stats;
    stats.initial.resize(n);
    stats.unigram.resize(n);
    stats.transition.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        stats.initial[i] = (initial[i] + 1.0) / (words + n);
        stats.unigram[i] = (unigram[i] + 1.0) / (chars + n);
        long long row_total = 0;
        for (int j = 0; j < n; ++j) row_total += transition[static_cast<std::size_t>(i) * n + j];
        for (int j = 0; j < n; ++j)
            stats.transition[static_cast<std::size_t>(i) * n + j] =
                (transition[static_cast<std::size_t>(i) * n + j] + 1.0) / (row_total + n);
    }
    return stats;
}

void HmmModel::finalize() {
    const auto n = static_cast<std::size_t>(alphabet.size());
    const auto cells_n = static_cast<std::size_t>(cells());
    if (initial.size() != n || unigram.size() != n || transition.size() != n * n ||
        emission.size() != n * cells_n)
        throw ModelError(ModelError::Kind::DimensionMismatch, "model table sizes disagree");
    const auto log_all = [](const std::vector<double>& p) {
        std::vector<double> out(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = safe_log(p[i]);
        return out;
    };
    initial_log = log_all(initial);
    unigram_log = log_all(unigram);
    transition_log = log_all(transition);
    emission_log1 = log_all(emission);
    emission_log0.resize(emission.size());
    for (std::size_t i = 0; i < emission.size(); ++i)
        emission_log0[i] = safe_log(1.0 - emission[i]);
}

HmmModel train_model(const Alphabet& alphabet, const std::vector<TrainingSample>& samples,
                     const std::string& corpus_text, int cell_height, int cell_width) {
    HmmModel model;
    model.alphabet = alphabet;
    model.cell_height = cell_height;
    model.cell_width = cell_width;
    model.emission = train_emissions(alphabet, samples, cell_height, cell_width);
    LanguageStats lang = train_language(alphabet, corpus_text);
    model.initial = std::move(lang.initial);
    model.unigram = std::move(lang.unigram);
    model.transition = std::move(lang.transition);
    model.finalize();
    return model;
}

std::vector<double> emission_loglik(const HmmModel& model, const Observation& obs) {
    if (obs.rows != model.cell_height || obs.cols != model.cell_width)
        throw ModelError(ModelError::Kind::DimensionMismatch,
                         "observation size differs from model cells");
    const int n = model.alphabet.size();
    const int cells = model.cells();
    std::vector<double> scores(n);
    for (int s = 0; s < n; ++s) {
        const std::size_t base = static_cast<std::size_t>(s) * cells;
        double acc = 0;
        for (int i = 0; i < cells; ++i)
            acc += obs.cells[i] ? model.emission_log1[base + i] : model.emission_log0[base + i];
        scores[s] = acc;
    }
    return scores;
}

std::string decode_viterbi(const HmmModel& model, const std::vector<Observation>& word) {
    if (word.empty()) return {};
    const int n = model.alphabet.size();
    const auto T = word.size();

    std::vector<double> score(n);
    std::vector<std::vector<int>> back(T, std::vector<int>(n, 0));
    {
        const auto e = emission_loglik(model, word[0]);
        for (int s = 0; s < n; ++s) score[s] = model.initial_log[s] + e[s];
    }
    for (std::size_t t = 1; t < T; ++t) {
        const auto e = emission_loglik(model, word[t]);
        std::vector<double> next(n);
        for (int s = 0; s < n; ++s) {
            double best = kNegInf;
            int best_prev = 0;
            for (int p = 0; p < n; ++p) {
                const double cand =
                    score[p] + model.transition_log[static_cast<std::size_t>(p) * n + s];
                if (cand > best) {
                    best = cand;
                    best_prev = p;
                }
            }
            next[s] = best + e[s];
            back[t][s] = best_prev;
        }
        score = std::move(next);
    }

    int state = 0;
    double best = kNegInf;
    for (int s = 0; s < n; ++s)
        if (score[s] > best) {
            best = score[s];
            state = s;
        }
    std::string out(T, ' ');
    for (std::size_t t = T; t-- > 0;) {
        out[t] = model.alphabet.at(state);
        state = back[t][state];
    }
    return out;
}

std::string decode_simplified(const HmmModel& model, const std::vector<Observation>& word) {
    std::string out;
    out.reserve(word.size());
    const int n = model.alphabet.size();
    for (const Observation& obs : word) {
        const auto e = emission_loglik(model, obs);
        int state = 0;
        double best = kNegInf;
        for (int s = 0; s < n; ++s) {
            const double cand = model.unigram_log[s] + e[s];
            if (cand > best) {
                best = cand;
                state = s;
            }
        }
        out.push_back(model.alphabet.at(state));
    }
    return out;
}

std::string RecognizedLine::text() const {
    std::string out;
    for (const RecognizedWord& w : words) {
        if (!out.empty()) out.push_back(' ');
        out += w.text;
    }
    return out;
}

std::vector<RecognizedLine> recognize_page(const HmmModel& model, const FeatureGrid& grid,
                                           const PageSegmentation& seg, DecoderKind decoder) {
    std::vector<RecognizedLine> lines;
    for (const LineSegment& line : seg.lines) {
        RecognizedLine rl{line.rows, {}};
        for (const WordSegment& word : line.words) {
            std::vector<Observation> obs;
            obs.reserve(word.chars.size());
            for (const Band& ch : word.chars)
                obs.push_back(observation_from_grid(grid, line.rows, ch, model.cell_height,
                                                    model.cell_width));
            const std::string text = decoder == DecoderKind::Viterbi
                                         ? decode_viterbi(model, obs)
                                         : decode_simplified(model, obs);
            rl.words.push_back({word.cols, text});
        }
        lines.push_back(std::move(rl));
    }
    return lines;
}

void save_model(std::ostream& out, const HmmModel& model) {
    const int n = model.alphabet.size();
    out << "HMM v1 " << n << " " << model.cell_height << " " << model.cell_width << "\n";
    out << model.alphabet.symbols() << "\n";
    out << std::setprecision(12);
    const auto row = [&](const char* tag, const double* p, int count) {
        out << tag;
        for (int i = 0; i < count; ++i) out << " " << p[i];
        out << "\n";
    };
    row("INITIAL", model.initial.data(), n);
    row("UNIGRAM", model.unigram.data(), n);
    for (int i = 0; i < n; ++i)
        row("TRANSITION", model.transition.data() + static_cast<std::size_t>(i) * n, n);
    for (int i = 0; i < n; ++i)
        row("EMISSION", model.emission.data() + static_cast<std::size_t>(i) * model.cells(),
            model.cells());
}

namespace {

void expect_tag(std::istream& in, const char* tag) {
    std::string word;
    if (!(in >> word) || word != tag)
        throw ModelError(ModelError::Kind::BadFile,
                         std::string("expected ") + tag + " record");
}

void read_probs(std::istream& in, double* p, int count) {
    for (int i = 0; i < count; ++i) {
        if (!(in >> p[i]) || p[i] < 0.0 || p[i] > 1.0)
            throw ModelError(ModelError::Kind::BadFile, "bad probability value");
    }
}

}  // namespace

HmmModel load_model(std::istream& in) {
    std::string magic, version;
    int n = 0, h = 0, w = 0;
    if (!(in >> magic >> version >> n >> h >> w) || magic != "HMM" || version != "v1")
        throw ModelError(ModelError::Kind::BadFile, "not a v1 model file");
    if (n <= 0 || h <= 0 || w <= 0 || n > 4096 || h > 4096 || w > 4096)
        throw ModelError(ModelError::Kind::BadFile, "unreasonable model dimensions");
    std::string symbols;
    if (!(in >> symbols) || static_cast<int>(symbols.size()) != n)
        throw ModelError(ModelError::Kind::BadFile, "symbol line length mismatch");

    HmmModel model;
    model.alphabet = Alphabet(symbols);
    model.cell_height = h;
    model.cell_width = w;
    model.initial.resize(n);
    model.unigram.resize(n);
    model.transition.resize(static_cast<std::size_t>(n) * n);
    model.emission.resize(static_cast<std::size_t>(n) * h * w);

    expect_tag(in, "INITIAL");
    read_probs(in, model.initial.data(), n);
    expect_tag(in, "UNIGRAM");
    read_probs(in, model.unigram.data(), n);
    for (int i = 0; i < n; ++i) {
        expect_tag(in, "TRANSITION");
        read_probs(in, model.transition.data() + static_cast<std::size_t>(i) * n, n);
    }
    for (int i = 0; i < n; ++i) {
        expect_tag(in, "EMISSION");
        read_probs(in, model.emission.data() + static_cast<std::size_t>(i) * h * w, h * w);
    }
    model.finalize();
    return model;
}

void save_model_file(const std::string& path, const HmmModel& model) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    save_model(out, model);
}

HmmModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return load_model(in);
}

void save_observations(std::ostream& out, const std::vector<Observation>& obs) {
    if (obs.empty()) throw Error("no observations to save");
    const int rows = obs[0].rows, cols = obs[0].cols;
    out << "OBS " << rows << " " << cols << " " << obs.size() << "\n";
    for (const Observation& o : obs) {
        if (o.rows != rows || o.cols != cols)
            throw ModelError(ModelError::Kind::DimensionMismatch,
                             "observations differ in size");
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) out.put(o.at(r, c) ? '#' : '.');
            out.put('\n');
        }
    }
}

std::vector<Observation> load_observations(std::istream& in) {
    std::string magic;
    int rows = 0, cols = 0;
    std::size_t count = 0;
    if (!(in >> magic >> rows >> cols >> count) || magic != "OBS" || rows <= 0 || cols <= 0)
        throw Error("not an observation file");
    std::vector<Observation> out;
    out.reserve(count);
    std::string cell_row;
    for (std::size_t i = 0; i < count; ++i) {
        Observation o(rows, cols);
        for (int r = 0; r < rows; ++r) {
            if (!(in >> cell_row) || static_cast<int>(cell_row.size()) != cols)
                throw Error("truncated observation block");
            for (int c = 0; c < cols; ++c)
                if (cell_row[c] == '#') o.set(r, c, 1);
        }
        out.push_back(std::move(o));
    }
    return out;
}

std::string observation_file_name(char symbol) {
    return "sym_" + std::to_string(static_cast<int>(static_cast<unsigned char>(symbol))) +
           ".obs";
}

}  // namespace cdocr
