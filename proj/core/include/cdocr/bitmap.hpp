#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace cdocr {

// Bilevel image, one byte per pixel: 0 = white, 1 = black.
class Bitmap {
public:
    Bitmap() = default;
    Bitmap(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height),
          pixels_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int row, int col) const {
        return pixels_[static_cast<std::size_t>(row) * width_ + col];
    }
    void set(int row, int col, std::uint8_t v) {
        pixels_[static_cast<std::size_t>(row) * width_ + col] = v;
    }

    std::span<const std::uint8_t> row(int r) const {
        return {pixels_.data() + static_cast<std::size_t>(r) * width_,
                static_cast<std::size_t>(width_)};
    }
    std::span<std::uint8_t> row(int r) {
        return {pixels_.data() + static_cast<std::size_t>(r) * width_,
                static_cast<std::size_t>(width_)};
    }

    Bitmap rotated180() const;

    // Paints src onto this image with src's (0,0) at (top, left); pixels are
    // OR-combined and clipped to the destination bounds.
    void blit(const Bitmap& src, int top, int left);

    bool operator==(const Bitmap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

// PBM (magic P4, binary packed, MSB-first rows padded to byte boundaries).
// 1 bits map to black.
Bitmap read_pbm(std::istream& in);
void write_pbm(std::ostream& out, const Bitmap& bm);
Bitmap read_pbm_file(const std::string& path);
void write_pbm_file(const std::string& path, const Bitmap& bm);

}  // namespace cdocr
