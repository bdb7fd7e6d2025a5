#include "cdocr/bitmap.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "cdocr/errors.hpp"

namespace cdocr {

Bitmap Bitmap::rotated180() const {
    Bitmap out(width_, height_);
    for (int r = 0; r < height_; ++r)
        for (int c = 0; c < width_; ++c)
            out.set(height_ - 1 - r, width_ - 1 - c, at(r, c));
    return out;
}

void Bitmap::blit(const Bitmap& src, int top, int left) {
    const int r0 = std::max(0, -top);
    const int r1 = std::min(src.height(), height_ - top);
    const int c0 = std::max(0, -left);
    const int c1 = std::min(src.width(), width_ - left);
    for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c)
            if (src.at(r, c))
                set(top + r, left + c, 1);
}

namespace {

int next_pbm_int(std::istream& in) {
    // Skips whitespace and '#' comments, per the netpbm header grammar.
    int ch = in.get();
    while (ch == '#' || std::isspace(ch)) {
        if (ch == '#')
            while (ch != '\n' && ch != EOF) ch = in.get();
        ch = in.get();
    }
    int value = 0;
    bool any = false;
    while (std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        any = true;
        ch = in.get();
    }
    if (!any) throw Error("pbm: malformed header");
    return value;
}

}  // namespace

Bitmap read_pbm(std::istream& in) {
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '4') throw Error("pbm: not a P4 file");
    const int width = next_pbm_int(in);
    const int height = next_pbm_int(in);
    // next_pbm_int consumed the single whitespace byte after the height.
    Bitmap bm(width, height);
    const int stride = (width + 7) / 8;
    std::vector<char> rowbuf(stride);
    for (int r = 0; r < height; ++r) {
        in.read(rowbuf.data(), stride);
        if (in.gcount() != stride) throw Error("pbm: truncated pixel data");
        for (int c = 0; c < width; ++c) {
            const auto byte = static_cast<std::uint8_t>(rowbuf[c / 8]);
            bm.set(r, c, (byte >> (7 - c % 8)) & 1);
        }
    }
    return bm;
}

void write_pbm(std::ostream& out, const Bitmap& bm) {
    out << "P4\n" << bm.width() << " " << bm.height() << "\n";
    const int stride = (bm.width() + 7) / 8;
    std::vector<char> rowbuf(stride);
    for (int r = 0; r < bm.height(); ++r) {
        std::fill(rowbuf.begin(), rowbuf.end(), 0);
        for (int c = 0; c < bm.width(); ++c)
            if (bm.at(r, c))
                rowbuf[c / 8] |= static_cast<char>(0x80 >> (c % 8));
        out.write(rowbuf.data(), stride);
    }
}

Bitmap read_pbm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return read_pbm(in);
}

void write_pbm_file(const std::string& path, const Bitmap& bm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    write_pbm(out, bm);
}

}  // namespace cdocr
