#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdocr/errors.hpp"

namespace cdocr {

// Bit order within each byte of a coded stream. Codewords themselves are
// always written most-significant-bit first; LsbFirst means each byte's bits
// are mirrored (TIFF FillOrder 2).
enum class FillOrder : std::uint8_t {
    MsbFirst = 1,
    LsbFirst = 2,
};

class BitWriter {
public:
    void put_bit(int bit) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
        ++nbits_;
    }

    // Writes the low `count` bits of `value`, most significant first.
    void put_bits(std::uint32_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1);
    }

    // Pads with zero bits to the next byte boundary.
    void align() { nbits_ = (nbits_ + 7) / 8 * 8; }

    std::size_t bit_count() const { return nbits_; }

    std::vector<std::uint8_t> take(FillOrder order = FillOrder::MsbFirst);

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, FillOrder order = FillOrder::MsbFirst)
        : bytes_(bytes), order_(order) {}

    bool at_end() const { return pos_ >= bytes_.size() * 8; }

    // Remaining bits are all zero or the stream is exhausted. Trailing zero
    // fill is legal in every coding scheme handled here.
    bool only_zero_fill_left() const;

    int read_bit() {
        if (at_end())
            throw DecodeError(DecodeError::Kind::Truncated, -1, "bit stream exhausted");
        return peek_unchecked(pos_++);
    }

    int peek_bit() const {
        if (at_end())
            throw DecodeError(DecodeError::Kind::Truncated, -1, "bit stream exhausted");
        return peek_unchecked(pos_);
    }

    std::size_t bit_pos() const { return pos_; }
    void seek(std::size_t bit_pos) { pos_ = bit_pos; }

    // Advances to the next byte boundary.
    void align() { pos_ = (pos_ + 7) / 8 * 8; }

private:
    int peek_unchecked(std::size_t p) const {
        const std::uint8_t byte = bytes_[p / 8];
        const int shift = order_ == FillOrder::MsbFirst ? 7 - static_cast<int>(p % 8)
                                                        : static_cast<int>(p % 8);
        return (byte >> shift) & 1;
    }

    std::span<const std::uint8_t> bytes_;
    FillOrder order_;
    std::size_t pos_ = 0;
};

}  // namespace cdocr
