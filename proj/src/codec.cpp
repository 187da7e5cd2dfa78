#include "restore/codec.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

namespace restore {

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::round(std::clamp(v, 0.0, 1.0) * 255.0));
}

// RAII wrapper around the libpng simplified-API control struct.
class PngReader {
public:
    explicit PngReader(std::span<const std::uint8_t> bytes) {
        std::memset(&image_, 0, sizeof image_);
        image_.version = PNG_IMAGE_VERSION;
        if (!png_image_begin_read_from_memory(&image_, bytes.data(), bytes.size())) {
            throw DecodeError(std::string("malformed PNG: ") + image_.message);
        }
        if (image_.format & PNG_FORMAT_FLAG_LINEAR) {
            throw DecodeError("unsupported PNG bit depth: 16 bits per channel");
        }
        if (image_.width == 0 || image_.height == 0) throw DecodeError("PNG has zero dimensions");
    }
    ~PngReader() { png_image_free(&image_); }
    PngReader(const PngReader&) = delete;
    PngReader& operator=(const PngReader&) = delete;

    png_image& image() { return image_; }

private:
    png_image image_;
};

struct PgmHeader {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::size_t data_offset = 0;
};

PgmHeader parse_pgm_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw DecodeError("malformed PGM: missing P5 magic");
    }
    std::size_t pos = 2;
    const auto skip_space_and_comments = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(bytes[pos])) {
                ++pos;
            } else {
                break;
            }
        }
    };
    const auto read_number = [&](const char* what) {
        skip_space_and_comments();
        if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
            throw DecodeError(std::string("malformed PGM: expected ") + what);
        }
        long value = 0;
        while (pos < bytes.size() && std::isdigit(bytes[pos])) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000) throw DecodeError(std::string("malformed PGM: ") + what + " too large");
            ++pos;
        }
        return static_cast<int>(value);
    };
    PgmHeader h;
    h.width = read_number("width");
    h.height = read_number("height");
    h.maxval = read_number("maxval");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        throw DecodeError("malformed PGM: header not terminated by whitespace");
    }
    h.data_offset = pos + 1;
    if (h.width == 0 || h.height == 0) throw DecodeError("PGM has zero dimensions");
    if (h.maxval == 0) throw DecodeError("malformed PGM: maxval 0");
    if (h.maxval > 255) {
        throw DecodeError("unsupported PGM bit depth: maxval " + std::to_string(h.maxval));
    }
    return h;
}

Raster decode_pgm(std::span<const std::uint8_t> bytes) {
    const PgmHeader h = parse_pgm_header(bytes);
    const auto n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    if (bytes.size() - h.data_offset < n) {
        throw DecodeError("truncated PGM: expected " + std::to_string(n) + " samples, got " +
                          std::to_string(bytes.size() - h.data_offset));
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = bytes[h.data_offset + i];
        if (v > h.maxval) throw DecodeError("PGM sample exceeds maxval");
        values[i] = static_cast<double>(v) / h.maxval;
    }
    return Raster::from_values(h.width, h.height, std::move(values));
}

Raster decode_png(std::span<const std::uint8_t> bytes) {
    PngReader reader(bytes);
    png_image& image = reader.image();
    const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
    const bool alpha = image.format & PNG_FORMAT_FLAG_ALPHA;
    image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB)
                         : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
    const int channels = PNG_IMAGE_PIXEL_CHANNELS(image.format);
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw DecodeError(std::string("malformed PNG: ") + image.message);
    }

    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (!color) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = buffer[i * channels] / 255.0;
        return Raster::from_values(w, h, std::move(values));
    }
    ColorImage rgb{w, h, 3, std::vector<double>(3 * n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) rgb.data[3 * i + c] = buffer[i * channels + c] / 255.0;
    }
    return to_grayscale(rgb);
}

std::vector<std::uint8_t> encode_png(const Raster& r) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(r.width());
    image.height = static_cast<png_uint_32>(r.height());
    image.format = PNG_FORMAT_GRAY;

    std::vector<std::uint8_t> pixels(r.size());
    std::transform(r.values().begin(), r.values().end(), pixels.begin(), to_byte);

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr)) {
        throw Error(std::string("PNG encode failed: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr)) {
        throw Error(std::string("PNG encode failed: ") + image.message);
    }
    out.resize(size);
    return out;
}

std::vector<std::uint8_t> encode_pgm(const Raster& r) {
    const std::string header =
        "P5\n" + std::to_string(r.width()) + " " + std::to_string(r.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + r.size());
    std::transform(r.values().begin(), r.values().end(), std::back_inserter(out), to_byte);
    return out;
}

}  // namespace

std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes) noexcept {
    if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
        return ImageFormat::Png;
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return ImageFormat::Pgm;
    return std::nullopt;
}

ImageInfo probe_image(std::span<const std::uint8_t> bytes) {
    const auto format = detect_format(bytes);
    if (!format) throw DecodeError("unrecognized image container (expected PNG or P5 PGM)");
    if (*format == ImageFormat::Pgm) {
        const PgmHeader h = parse_pgm_header(bytes);
        return {ImageFormat::Pgm, h.width, h.height};
    }
    // IHDR is required to come first: length, "IHDR", width, height, bit depth.
    if (bytes.size() < 33 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
        throw DecodeError("malformed PNG: missing IHDR");
    }
    const auto be32 = [&](std::size_t at) {
        return (std::uint32_t{bytes[at]} << 24) | (std::uint32_t{bytes[at + 1]} << 16) |
               (std::uint32_t{bytes[at + 2]} << 8) | std::uint32_t{bytes[at + 3]};
    };
    const std::uint32_t w = be32(16);
    const std::uint32_t h = be32(20);
    if (w == 0 || h == 0) throw DecodeError("PNG has zero dimensions");
    if (w > 0x7fffffffu || h > 0x7fffffffu) throw DecodeError("malformed PNG: dimensions out of range");
    if (bytes[24] == 16) throw DecodeError("unsupported PNG bit depth: 16 bits per channel");
    return {ImageFormat::Png, static_cast<int>(w), static_cast<int>(h)};
}

Raster decode_image(std::span<const std::uint8_t> bytes, ImageFormat format) {
    return format == ImageFormat::Png ? decode_png(bytes) : decode_pgm(bytes);
}

Raster decode_image(std::span<const std::uint8_t> bytes) {
    const auto format = detect_format(bytes);
    if (!format) throw DecodeError("unrecognized image container (expected PNG or P5 PGM)");
    return decode_image(bytes, *format);
}

std::vector<std::uint8_t> encode_image(const Raster& r, ImageFormat format) {
    return format == ImageFormat::Png ? encode_png(r) : encode_pgm(r);
}

Raster quantize_8bit(const Raster& r) {
    std::vector<double> values(r.size());
    std::transform(r.values().begin(), r.values().end(), values.begin(),
                   [](double v) { return to_byte(v) / 255.0; });
    return Raster::from_values(r.width(), r.height(), std::move(values));
}

std::string_view format_extension(ImageFormat format) noexcept {
    return format == ImageFormat::Png ? ".png" : ".pgm";
}

ImageFormat format_for_path(std::string_view path) noexcept {
    if (path.size() >= 4) {
        std::string ext(path.substr(path.size() - 4));
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm") return ImageFormat::Pgm;
    }
    return ImageFormat::Png;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + path);
}

}  // namespace restore
