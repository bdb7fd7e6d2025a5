// cdocr: OCR for CCITT-compressed TIFF documents that reads coding-mode
// events off the bitstream instead of decompressing to a raster.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cdocr/errors.hpp"
#include "cdocr/eval.hpp"
#include "cdocr/features.hpp"
#include "cdocr/glyph_font.hpp"
#include "cdocr/hmm.hpp"
#include "cdocr/render.hpp"
#include "cdocr/segment.hpp"
#include "cdocr/tiff.hpp"

namespace {

using namespace cdocr;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ModeMask parse_mode_mask(const std::string& mode) {
    if (mode == "pass") return ModeMask::only(ModeKind::Pass);
    if (mode == "vertical") return ModeMask::only(ModeKind::Vertical);
    if (mode == "horizontal") return ModeMask::only(ModeKind::Horizontal);
    if (mode == "all") return ModeMask::all();
    throw Error("--mode: expected pass|vertical|horizontal|all");
}

ModeKind parse_mode_kind(const std::string& mode) {
    if (mode == "pass") return ModeKind::Pass;
    if (mode == "vertical") return ModeKind::Vertical;
    if (mode == "horizontal") return ModeKind::Horizontal;
    throw Error("--modes: expected pass|vertical|horizontal");
}

CodingScheme parse_scheme(const std::string& name) {
    if (name == "g4") return {SchemeKind::G4, 2};
    if (name == "g3-2d") return {SchemeKind::G3_2D, 2};
    if (name == "g3-1d") return {SchemeKind::G3_1D, 2};
    throw Error("--scheme: expected g4|g3-2d|g3-1d");
}

DecoderKind parse_decoder(const std::string& name) {
    if (name == "viterbi") return DecoderKind::Viterbi;
    if (name == "simple") return DecoderKind::Simplified;
    throw Error("--decoder: expected viterbi|simple");
}

FeatureGrid extract_grid(const CompressedPage& page, const std::string& mode,
                         bool bidirectional) {
    const ModeMask mask = parse_mode_mask(mode);
    if (bidirectional) return extract_bidirectional(page, mask);
    return grid_from_events(extract_events(page, mask), page.width, page.height);
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
}

int run(int argc, char** argv) {
    CLI::App app{"OCR on CCITT-compressed TIFF images in the compressed domain"};
    app.require_subcommand(1);

    // extract
    auto* extract = app.add_subcommand("extract", "dump a coding-mode feature grid");
    std::string ex_input, ex_mode = "pass", ex_output;
    bool ex_bidi = false;
    int ex_page = 0;
    extract->add_option("input", ex_input, "CCITT TIFF file")->required();
    extract->add_option("--mode", ex_mode, "pass|vertical|horizontal|all")
        ->default_str("pass");
    extract->add_flag("--bidirectional", ex_bidi, "also scan the 180-degree rotation");
    extract->add_option("--page", ex_page, "page index")->default_str("0");
    extract->add_option("-o,--output", ex_output, "grid file (default stdout)");

    // segment
    auto* segment = app.add_subcommand("segment", "find line/word/char bands in a grid");
    std::string sg_input, sg_output;
    SegmentParams sg_params;
    segment->add_option("input", sg_input, "feature grid file")->required();
    segment->add_option("--min-line-gap", sg_params.min_line_gap, "empty rows ending a line")
        ->default_str("3");
    segment->add_option("--min-line-mass", sg_params.min_line_mass,
                        "events a line needs to survive")
        ->default_str("2");
    segment->add_option("--min-word-gap", sg_params.min_word_gap,
                        "empty columns ending a word")
        ->default_str("8");
    segment->add_option("--cell-width", sg_params.cell_width, "character pitch in columns")
        ->default_str("16");
    segment->add_option("-o,--output", sg_output, "segmentation file (default stdout)");

    // train
    auto* train = app.add_subcommand("train", "train a model from glyph samples + corpus");
    std::string tr_glyph_dir, tr_corpus, tr_output;
    bool tr_fold = false;
    int tr_cell_h = 25, tr_cell_w = 16;
    train->add_option("--glyph-dir", tr_glyph_dir, "directory of sym_<code>.obs files")
        ->required();
    train->add_option("--corpus", tr_corpus, "training text file")->required();
    train->add_flag("--fold-case", tr_fold, "use the case-folded alphabet");
    train->add_option("--cell-height", tr_cell_h, "observation rows")->default_str("25");
    train->add_option("--cell-width", tr_cell_w, "observation columns")->default_str("16");
    train->add_option("-o,--output", tr_output, "model file (default stdout)");

    // recognize
    auto* recognize = app.add_subcommand("recognize", "read text from a CCITT TIFF");
    std::string rc_input, rc_model, rc_decoder = "viterbi", rc_mode = "pass", rc_output;
    bool rc_bidi = false;
    int rc_page = 0;
    SegmentParams rc_params;
    recognize->add_option("input", rc_input, "CCITT TIFF file")->required();
    recognize->add_option("--model", rc_model, "model file")->required();
    recognize->add_option("--decoder", rc_decoder, "viterbi|simple")->default_str("viterbi");
    recognize->add_option("--mode", rc_mode, "pass|vertical|horizontal|all")
        ->default_str("pass");
    recognize->add_flag("--bidirectional", rc_bidi, "also scan the 180-degree rotation");
    recognize->add_option("--page", rc_page, "page index")->default_str("0");
    recognize->add_option("--min-line-gap", rc_params.min_line_gap, "segmenter parameter")
        ->default_str("3");
    recognize->add_option("--min-word-gap", rc_params.min_word_gap, "segmenter parameter")
        ->default_str("8");
    recognize->add_option("-o,--output", rc_output, "text file (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "run the recognition experiment and print a table");
    std::vector<std::string> ev_pages;
    std::string ev_model, ev_modes = "pass,vertical,horizontal", ev_corpus, ev_scheme = "g4",
                ev_decoder = "viterbi";
    std::uint64_t ev_seed = 1;
    bool ev_bidi = false;
    eval->add_option("--pages", ev_pages,
                     "page spec file, or 'reference' for the built-in 11-line layout "
                     "(repeatable)")
        ->required();
    eval->add_option("--model", ev_model, "model file")->required();
    eval->add_option("--modes", ev_modes, "comma list of pass|vertical|horizontal")
        ->default_str("pass,vertical,horizontal");
    eval->add_option("--corpus", ev_corpus, "vocabulary source for generated pages");
    eval->add_option("--seed", ev_seed, "generator seed")->default_str("1");
    eval->add_option("--scheme", ev_scheme, "g4|g3-2d")->default_str("g4");
    eval->add_option("--decoder", ev_decoder, "viterbi|simple")->default_str("viterbi");
    eval->add_flag("--bidirectional", ev_bidi, "also scan the 180-degree rotation");

    // render
    auto* render = app.add_subcommand("render", "typeset a text file as a CCITT TIFF");
    std::string rd_input, rd_output, rd_truth, rd_scheme = "g4", rd_pbm;
    bool rd_eol = false;
    render->add_option("input", rd_input, "plain text page spec")->required();
    render->add_option("-o,--output", rd_output, "TIFF file")->required();
    render->add_option("--truth", rd_truth, "write the rendered text here");
    render->add_option("--scheme", rd_scheme, "g4|g3-2d|g3-1d")->default_str("g4");
    render->add_flag("--eol", rd_eol, "frame G3 rows with EOL codes");
    render->add_option("--pbm", rd_pbm, "also dump the raster as PBM");

    // mksamples
    auto* mksamples = app.add_subcommand(
        "mksamples", "render training pages and cut per-symbol observation files");
    std::string mk_out, mk_mode = "pass", mk_scheme = "g4";
    bool mk_fold = false;
    int mk_repeats = 3;
    std::uint64_t mk_seed = 1;
    mksamples->add_option("--out", mk_out, "output directory")->required();
    mksamples->add_option("--repeats", mk_repeats, "alphabet sweeps")->default_str("3");
    mksamples->add_option("--seed", mk_seed, "shuffle seed")->default_str("1");
    mksamples->add_flag("--fold-case", mk_fold, "use the case-folded alphabet");
    mksamples->add_option("--mode", mk_mode, "pass|vertical|horizontal")->default_str("pass");
    mksamples->add_option("--scheme", mk_scheme, "g4|g3-2d")->default_str("g4");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // --help / --version exit cleanly
    }

    if (*extract) {
        const CompressedPage page = tiff_read_page_file(ex_input, ex_page);
        const FeatureGrid grid = extract_grid(page, ex_mode, ex_bidi);
        std::ostringstream buf;
        write_fgrid(buf, grid);
        write_or_print(ex_output, buf.str());
    } else if (*segment) {
        const FeatureGrid grid = read_fgrid_file(sg_input);
        std::ostringstream buf;
        write_segmentation(buf, segment_page(grid, sg_params));
        write_or_print(sg_output, buf.str());
    } else if (*train) {
        const Alphabet alphabet =
            tr_fold ? Alphabet::case_insensitive() : Alphabet::standard();
        std::vector<TrainingSample> samples;
        for (int i = 0; i < alphabet.size(); ++i) {
            const std::string path = tr_glyph_dir + "/" + observation_file_name(alphabet.at(i));
            std::ifstream in(path);
            if (!in) throw Error("missing glyph sample file: " + path);
            for (Observation& obs : load_observations(in))
                samples.push_back({i, std::move(obs)});
        }
        const HmmModel model = train_model(alphabet, samples, read_text_file(tr_corpus),
                                           tr_cell_h, tr_cell_w);
        std::ostringstream buf;
        save_model(buf, model);
        write_or_print(tr_output, buf.str());
    } else if (*recognize) {
        const HmmModel model = load_model_file(rc_model);
        const CompressedPage page = tiff_read_page_file(rc_input, rc_page);
        const FeatureGrid grid = extract_grid(page, rc_mode, rc_bidi);
        const PageSegmentation seg = segment_page(grid, rc_params);
        std::ostringstream buf;
        for (const RecognizedLine& line :
             recognize_page(model, grid, seg, parse_decoder(rc_decoder)))
            buf << line.text() << '\n';
        write_or_print(rc_output, buf.str());
    } else if (*eval) {
        const HmmModel model = load_model_file(ev_model);
        std::vector<PageSpec> pages;
        for (const std::string& spec : ev_pages) {
            if (spec == "reference") {
                if (ev_corpus.empty())
                    throw Error("--pages reference needs --corpus for its vocabulary");
                pages.push_back(reference_page_spec(
                    corpus_vocabulary(read_text_file(ev_corpus)), ev_seed));
            } else {
                pages.push_back(read_page_spec_file(spec));
            }
        }
        std::vector<ModeKind> modes;
        std::stringstream list(ev_modes);
        std::string item;
        while (std::getline(list, item, ',')) modes.push_back(parse_mode_kind(item));
        ExperimentOptions opts;
        opts.scheme = parse_scheme(ev_scheme);
        opts.eol_present = opts.scheme.kind == SchemeKind::G3_2D;
        opts.decoder = parse_decoder(ev_decoder);
        opts.bidirectional = ev_bidi;
        print_experiment(std::cout, run_experiment(pages, model, modes, opts));
    } else if (*render) {
        const RenderResult result = render_page(read_page_spec_file(rd_input));
        const CodingScheme scheme = parse_scheme(rd_scheme);
        const bool eol = rd_eol || scheme.kind == SchemeKind::G3_2D;
        tiff_write_page_file(rd_output, encode_page(result.page, scheme, eol));
        if (!rd_truth.empty()) write_truth_file(rd_truth, result.truth);
        if (!rd_pbm.empty()) write_pbm_file(rd_pbm, result.page);
    } else if (*mksamples) {
        const Alphabet alphabet =
            mk_fold ? Alphabet::case_insensitive() : Alphabet::standard();
        ExperimentOptions opts;
        opts.scheme = parse_scheme(mk_scheme);
        opts.eol_present = opts.scheme.kind == SchemeKind::G3_2D;
        const std::vector<TrainingSample> samples = collect_training_samples(
            make_training_specs(alphabet, mk_repeats, mk_seed), alphabet,
            parse_mode_kind(mk_mode), opts);
        std::map<int, std::vector<Observation>> by_symbol;
        for (const TrainingSample& s : samples) by_symbol[s.symbol].push_back(s.obs);
        std::filesystem::create_directories(mk_out);
        for (int i = 0; i < alphabet.size(); ++i) {
            std::ofstream out(mk_out + "/" + observation_file_name(alphabet.at(i)));
            if (!out) throw Error("cannot write sample file in " + mk_out);
            save_observations(out, by_symbol[i]);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
