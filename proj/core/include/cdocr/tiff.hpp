#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdocr/ccitt.hpp"

namespace cdocr {

// Baseline bilevel TIFF 6.0 container access, limited to CCITT-compressed
// images (Compression 2, 3, or 4), BitsPerSample 1, SamplesPerPixel 1, and
// PhotometricInterpretation 0 or 1. Both byte orders are read; unknown tags
// are skipped. All structural problems raise TiffError, never UB.

int tiff_page_count(const std::vector<std::uint8_t>& file);

CompressedPage tiff_read_page(const std::vector<std::uint8_t>& file, int page_index = 0);

// Emits a single-page, single-strip, little-endian file with FillOrder 1.
// G3_2D pages must carry EOLs (TIFF Compression 3 framing requires them).
std::vector<std::uint8_t> tiff_write_page(const CompressedPage& page);

CompressedPage tiff_read_page_file(const std::string& path, int page_index = 0);
void tiff_write_page_file(const std::string& path, const CompressedPage& page);

}  // namespace cdocr
