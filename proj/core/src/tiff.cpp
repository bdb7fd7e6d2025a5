#include "cdocr/tiff.hpp"

#include <fstream>
#include <optional>

#include "cdocr/errors.hpp"

namespace cdocr {

namespace {

using Kind = TiffError::Kind;

constexpr std::uint16_t kTagImageWidth = 256;
constexpr std::uint16_t kTagImageLength = 257;
constexpr std::uint16_t kTagBitsPerSample = 258;
constexpr std::uint16_t kTagCompression = 259;
constexpr std::uint16_t kTagPhotometric = 262;
constexpr std::uint16_t kTagFillOrder = 266;
constexpr std::uint16_t kTagStripOffsets = 273;
constexpr std::uint16_t kTagSamplesPerPixel = 277;
constexpr std::uint16_t kTagRowsPerStrip = 278;
constexpr std::uint16_t kTagStripByteCounts = 279;
constexpr std::uint16_t kTagT4Options = 292;
constexpr std::uint16_t kTagT6Options = 293;

constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;

struct FileView {
    std::span<const std::uint8_t> bytes;
    bool big_endian = false;

    std::uint16_t u16(std::size_t off) const {
        if (off + 2 > bytes.size())
            throw TiffError(Kind::TruncatedIfd, "read past end of file");
        return big_endian ? static_cast<std::uint16_t>(bytes[off] << 8 | bytes[off + 1])
                          : static_cast<std::uint16_t>(bytes[off + 1] << 8 | bytes[off]);
    }

    std::uint32_t u32(std::size_t off) const {
        if (off + 4 > bytes.size())
            throw TiffError(Kind::TruncatedIfd, "read past end of file");
        const auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(bytes[off + i]); };
        return big_endian ? b(0) << 24 | b(1) << 16 | b(2) << 8 | b(3)
                          : b(3) << 24 | b(2) << 16 | b(1) << 8 | b(0);
    }
};

struct IfdEntry {
    std::uint16_t tag = 0;
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t value_off = 0;  // offset of the 4-byte value/offset field
};

std::size_t type_size(std::uint16_t type) {
    return type == kTypeShort ? 2 : type == kTypeLong ? 4 : 0;
}

// Where the entry's element data lives: inline when it fits in 4 bytes.
std::size_t element_base(const FileView& f, const IfdEntry& e) {
    const std::uint64_t total = static_cast<std::uint64_t>(e.count) * type_size(e.type);
    return total <= 4 ? e.value_off : f.u32(e.value_off);
}

std::uint32_t element_at(const FileView& f, const IfdEntry& e, std::uint32_t index) {
    const std::size_t base = element_base(f, e);
    return e.type == kTypeShort ? f.u16(base + index * 2u) : f.u32(base + index * 4u);
}

std::uint32_t scalar(const FileView& f, const IfdEntry& e, std::uint16_t tag_for_error) {
    if (type_size(e.type) == 0 || e.count == 0)
        throw TiffError(Kind::UnsupportedCompression,
                        "tag " + std::to_string(tag_for_error) + " has unusable type");
    return element_at(f, e, 0);
}

FileView open_view(const std::vector<std::uint8_t>& file) {
    FileView f{std::span<const std::uint8_t>(file), false};
    if (file.size() < 8) throw TiffError(Kind::BadMagic, "file shorter than TIFF header");
    if (file[0] == 'I' && file[1] == 'I')
        f.big_endian = false;
    else if (file[0] == 'M' && file[1] == 'M')
        f.big_endian = true;
    else
        throw TiffError(Kind::BadMagic, "not a TIFF byte-order mark");
    if (f.u16(2) != 42) throw TiffError(Kind::BadMagic, "bad TIFF version number");
    return f;
}

// Returns the file offset of the page's IFD.
std::size_t locate_ifd(const FileView& f, int page_index) {
    std::size_t off = f.u32(4);
    for (int page = 0; ; ++page) {
        if (off == 0) throw TiffError(Kind::PageOutOfRange, "page index beyond last IFD");
        if (off + 2 > f.bytes.size())
            throw TiffError(Kind::TruncatedIfd, "IFD offset past end of file");
        if (page == page_index) return off;
        if (page > 0xFFFF) throw TiffError(Kind::TruncatedIfd, "IFD chain does not terminate");
        const std::uint16_t n = f.u16(off);
        off = f.u32(off + 2 + static_cast<std::size_t>(n) * 12);
    }
}

std::vector<IfdEntry> read_entries(const FileView& f, std::size_t ifd_off) {
    const std::uint16_t n = f.u16(ifd_off);
    if (ifd_off + 2 + static_cast<std::size_t>(n) * 12 + 4 > f.bytes.size())
        throw TiffError(Kind::TruncatedIfd, "IFD entries past end of file");
    std::vector<IfdEntry> entries(n);
    for (std::uint16_t i = 0; i < n; ++i) {
        const std::size_t e = ifd_off + 2 + static_cast<std::size_t>(i) * 12;
        entries[i] = {f.u16(e), f.u16(e + 2), f.u32(e + 4), e + 8};
    }
    return entries;
}

const IfdEntry* find_tag(const std::vector<IfdEntry>& entries, std::uint16_t tag) {
    for (const auto& e : entries)
        if (e.tag == tag) return &e;
    return nullptr;
}

}  // namespace

int tiff_page_count(const std::vector<std::uint8_t>& file) {
    const FileView f = open_view(file);
    std::size_t off = f.u32(4);
    int count = 0;
    while (off != 0) {
        if (off + 2 > f.bytes.size())
            throw TiffError(Kind::TruncatedIfd, "IFD offset past end of file");
        if (++count > 0xFFFF)
            throw TiffError(Kind::TruncatedIfd, "IFD chain does not terminate");
        const std::uint16_t n = f.u16(off);
        off = f.u32(off + 2 + static_cast<std::size_t>(n) * 12);
    }
    return count;
}

CompressedPage tiff_read_page(const std::vector<std::uint8_t>& file, int page_index) {
    const FileView f = open_view(file);
    if (page_index < 0) throw TiffError(Kind::PageOutOfRange, "negative page index");
    const auto entries = read_entries(f, locate_ifd(f, page_index));

    const auto required = [&](std::uint16_t tag) -> const IfdEntry& {
        const IfdEntry* e = find_tag(entries, tag);
        if (!e)
            throw TiffError(Kind::TruncatedIfd, "missing required tag " + std::to_string(tag));
        return *e;
    };
    const auto optional_scalar = [&](std::uint16_t tag,
                                     std::uint32_t fallback) -> std::uint32_t {
        const IfdEntry* e = find_tag(entries, tag);
        return e ? scalar(f, *e, tag) : fallback;
    };

    const std::uint32_t width = scalar(f, required(kTagImageWidth), kTagImageWidth);
    const std::uint32_t height = scalar(f, required(kTagImageLength), kTagImageLength);
    if (width == 0 || height == 0 || width > 1u << 20 || height > 1u << 20)
        throw TiffError(Kind::UnsupportedCompression, "unreasonable image dimensions");

    if (optional_scalar(kTagBitsPerSample, 1) != 1)
        throw TiffError(Kind::UnsupportedCompression, "not a bilevel image");
    if (optional_scalar(kTagSamplesPerPixel, 1) != 1)
        throw TiffError(Kind::UnsupportedCompression, "multi-sample images unsupported");

    const std::uint32_t photometric = optional_scalar(kTagPhotometric, 0);
    if (photometric > 1)
        throw TiffError(Kind::UnsupportedCompression, "photometric interpretation not bilevel");

    const std::uint32_t fill = optional_scalar(kTagFillOrder, 1);
    if (fill != 1 && fill != 2)
        throw TiffError(Kind::UnsupportedCompression, "bad FillOrder");

    CompressedPage page;
    page.width = static_cast<int>(width);
    page.height = static_cast<int>(height);
    page.fill_order = fill == 1 ? FillOrder::MsbFirst : FillOrder::LsbFirst;
    page.invert = photometric == 1;

    const std::uint32_t compression = scalar(f, required(kTagCompression), kTagCompression);
    switch (compression) {
        case 2:
            page.scheme = {SchemeKind::G3_1D, 2};
            page.eol_present = false;  // modified Huffman, rows byte-aligned
            break;
        case 3: {
            const std::uint32_t t4 = optional_scalar(kTagT4Options, 0);
            if (t4 & 2u)
                throw TiffError(Kind::UnsupportedCompression, "T.4 uncompressed mode unsupported");
            page.scheme = {(t4 & 1u) ? SchemeKind::G3_2D : SchemeKind::G3_1D, 2};
            page.eol_present = true;
            break;
        }
        case 4: {
            const std::uint32_t t6 = optional_scalar(kTagT6Options, 0);
            if (t6 & 2u)
                throw TiffError(Kind::UnsupportedCompression, "T.6 uncompressed mode unsupported");
            page.scheme = {SchemeKind::G4, 2};
            page.eol_present = false;
            break;
        }
        default:
            throw TiffError(Kind::UnsupportedCompression,
                            "compression " + std::to_string(compression) + " unsupported");
    }

    const IfdEntry& offsets = required(kTagStripOffsets);
    const IfdEntry& counts = required(kTagStripByteCounts);
    const std::uint32_t rps = optional_scalar(kTagRowsPerStrip, height);
    if (rps == 0) throw TiffError(Kind::UnsupportedCompression, "RowsPerStrip is zero");
    const auto nstrips =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(height) + rps - 1) / rps);
    if (offsets.count < nstrips || counts.count < nstrips)
        throw TiffError(Kind::TruncatedIfd, "strip tables shorter than strip count");
    if (type_size(offsets.type) == 0 || type_size(counts.type) == 0)
        throw TiffError(Kind::UnsupportedCompression, "strip tables have unusable type");

    page.rows_per_strip = static_cast<int>(rps);
    for (std::uint32_t s = 0; s < nstrips; ++s) {
        const std::uint64_t off = element_at(f, offsets, s);
        const std::uint64_t len = element_at(f, counts, s);
        if (off + len > f.bytes.size())
            throw TiffError(Kind::TruncatedIfd, "strip data past end of file");
        page.strip_offsets.push_back(page.data.size());
        page.data.insert(page.data.end(), f.bytes.begin() + static_cast<std::size_t>(off),
                         f.bytes.begin() + static_cast<std::size_t>(off + len));
    }
    return page;
}

std::vector<std::uint8_t> tiff_write_page(const CompressedPage& page) {
    if (page.strip_offsets.size() > 1)
        throw Error("tiff_write_page expects a single-strip page");
    if (page.scheme.kind == SchemeKind::G3_2D && !page.eol_present)
        throw Error("TIFF compression 3 requires EOL framing for 2D data");

    std::uint16_t compression = 0;
    std::uint32_t t4_options = 0;
    switch (page.scheme.kind) {
        case SchemeKind::G3_1D:
            compression = page.eol_present ? 3 : 2;
            break;
        case SchemeKind::G3_2D:
            compression = 3;
            t4_options = 1;
            break;
        case SchemeKind::G4:
            compression = 4;
            break;
    }

    struct Tag {
        std::uint16_t tag;
        std::uint16_t type;
        std::uint32_t value;
    };
    std::vector<Tag> tags = {
        {kTagImageWidth, kTypeLong, static_cast<std::uint32_t>(page.width)},
        {kTagImageLength, kTypeLong, static_cast<std::uint32_t>(page.height)},
        {kTagBitsPerSample, kTypeShort, 1},
        {kTagCompression, kTypeShort, compression},
        {kTagPhotometric, kTypeShort, page.invert ? 1u : 0u},
        {kTagFillOrder, kTypeShort, 1},
        {kTagStripOffsets, kTypeLong, 0},  // patched below
        {kTagSamplesPerPixel, kTypeShort, 1},
        {kTagRowsPerStrip, kTypeLong, static_cast<std::uint32_t>(page.height)},
        {kTagStripByteCounts, kTypeLong, static_cast<std::uint32_t>(page.data.size())},
    };
    if (compression == 3) tags.push_back({kTagT4Options, kTypeLong, t4_options});

    const std::uint32_t data_off = 8 + 2 + static_cast<std::uint32_t>(tags.size()) * 12 + 4;
    for (auto& t : tags)
        if (t.tag == kTagStripOffsets) t.value = data_off;

    std::vector<std::uint8_t> out;
    const auto put16 = [&](std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
    };
    const auto put32 = [&](std::uint32_t v) {
        put16(static_cast<std::uint16_t>(v));
        put16(static_cast<std::uint16_t>(v >> 16));
    };

    out.push_back('I');
    out.push_back('I');
    put16(42);
    put32(8);  // IFD immediately follows the header
    put16(static_cast<std::uint16_t>(tags.size()));
    for (const Tag& t : tags) {
        put16(t.tag);
        put16(t.type);
        put32(1);
        if (t.type == kTypeShort) {
            put16(static_cast<std::uint16_t>(t.value));
            put16(0);
        } else {
            put32(t.value);
        }
    }
    put32(0);  // no further IFDs

    if (page.fill_order == FillOrder::MsbFirst) {
        out.insert(out.end(), page.data.begin(), page.data.end());
    } else {
        for (std::uint8_t b : page.data) {
            b = static_cast<std::uint8_t>((b & 0xF0u) >> 4 | (b & 0x0Fu) << 4);
            b = static_cast<std::uint8_t>((b & 0xCCu) >> 2 | (b & 0x33u) << 2);
            b = static_cast<std::uint8_t>((b & 0xAAu) >> 1 | (b & 0x55u) << 1);
            out.push_back(b);
        }
    }
    return out;
}

CompressedPage tiff_read_page_file(const std::string& path, int page_index) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return tiff_read_page(bytes, page_index);
}

void tiff_write_page_file(const std::string& path, const CompressedPage& page) {
    const auto bytes = tiff_write_page(page);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace cdocr
