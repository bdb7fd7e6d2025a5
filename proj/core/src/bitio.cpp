#include "cdocr/bitio.hpp"

namespace cdocr {

namespace {

std::uint8_t reverse_byte(std::uint8_t b) {
    b = static_cast<std::uint8_t>((b & 0xF0u) >> 4 | (b & 0x0Fu) << 4);
    b = static_cast<std::uint8_t>((b & 0xCCu) >> 2 | (b & 0x33u) << 2);
    b = static_cast<std::uint8_t>((b & 0xAAu) >> 1 | (b & 0x55u) << 1);
    return b;
}

}  // namespace

std::vector<std::uint8_t> BitWriter::take(FillOrder order) {
    std::vector<std::uint8_t> out = std::move(bytes_);
    bytes_.clear();
    nbits_ = 0;
    if (order == FillOrder::LsbFirst)
        for (auto& b : out) b = reverse_byte(b);
    return out;
}

bool BitReader::only_zero_fill_left() const {
    for (std::size_t p = pos_; p < bytes_.size() * 8; ++p)
        if (peek_unchecked(p)) return false;
    return true;
}

}  // namespace cdocr
