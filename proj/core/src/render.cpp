#include "cdocr/render.hpp"

#include <fstream>
#include <sstream>

#include "cdocr/errors.hpp"

namespace cdocr {
namespace {

int line_advance(const std::string& line, const GlyphFont& font, int word_spacing) {
    int w = 0;
    for (char ch : line) w += ch == ' ' ? word_spacing : font.cell_width();
    return w;
}

}  // namespace

RenderResult render_page(const PageSpec& spec, const GlyphFont& font) {
    if (spec.line_spacing < 1 || spec.word_spacing < 1 || spec.margin < 1)
        throw RenderError(RenderError::Kind::BadSpec, "spacing values must be positive");
    if (spec.lines.empty()) {
        RenderResult blank;
        blank.page = Bitmap(2 * spec.margin, 2 * spec.margin);
        blank.truth.width = blank.page.width();
        blank.truth.height = blank.page.height();
        return blank;
    }
    for (const std::string& line : spec.lines) {
        if (line.empty()) throw RenderError(RenderError::Kind::BadSpec, "empty page line");
        if (line.front() == ' ' || line.back() == ' ')
            throw RenderError(RenderError::Kind::BadSpec, "page line starts or ends with a space");
        for (char ch : line)
            if (ch != ' ' && !font.has(ch))
                throw RenderError(RenderError::Kind::UnknownGlyph,
                                  std::string("no glyph for symbol '") + ch + "'");
    }

    const int cell_h = font.cell_height();
    const int cell_w = font.cell_width();
    int body_w = 0;
    for (const std::string& line : spec.lines)
        body_w = std::max(body_w, line_advance(line, font, spec.word_spacing));
    const int n = static_cast<int>(spec.lines.size());
    const int width = 2 * spec.margin + body_w;
    const int height = 2 * spec.margin + n * cell_h + (n - 1) * spec.line_spacing;

    RenderResult out;
    out.page = Bitmap(width, height);
    out.truth.lines = spec.lines;
    out.truth.width = width;
    out.truth.height = height;

    for (int i = 0; i < n; ++i) {
        const int top = spec.margin + i * (cell_h + spec.line_spacing);
        out.truth.line_tops.push_back(top);
        out.truth.boxes.emplace_back();
        int col = spec.margin;
        for (char ch : spec.lines[i]) {
            if (ch == ' ') {
                col += spec.word_spacing;
                continue;
            }
            out.page.blit(font.glyph(ch), top, col);
            out.truth.boxes.back().push_back({ch, top, top + cell_h, col, col + cell_w});
            col += cell_w;
        }
    }
    return out;
}

PageSpec read_page_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open page spec file: " + path);
    PageSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        spec.lines.push_back(line);
    }
    return spec;
}

void write_truth_file(const std::string& path, const PageTruth& truth) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open truth file for writing: " + path);
    for (const std::string& line : truth.lines) out << line << '\n';
}

std::vector<std::string> read_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open truth file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace cdocr
