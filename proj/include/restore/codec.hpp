#pragma once

#include "restore/raster.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace restore {

enum class ImageFormat { Png, Pgm };

class DecodeError : public Error {
public:
    using Error::Error;
};

struct ImageInfo {
    ImageFormat format;
    int width;
    int height;
};

/// Sniffs the container from its magic bytes.
std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes) noexcept;

/// Reads only the header. Throws DecodeError on a malformed header.
ImageInfo probe_image(std::span<const std::uint8_t> bytes);

/// Decodes 8-bit gray/RGB/RGBA PNG or binary PGM (P5, maxval <= 255) into a
/// grayscale Raster with values v / maxval. Alpha is ignored.
Raster decode_image(std::span<const std::uint8_t> bytes, ImageFormat format);
Raster decode_image(std::span<const std::uint8_t> bytes);

/// 8-bit grayscale output, each sample round(v * 255).
std::vector<std::uint8_t> encode_image(const Raster& r, ImageFormat format);

/// round(v * 255) / 255 per pixel; what a decode of encode_image yields.
Raster quantize_8bit(const Raster& r);

std::string_view format_extension(ImageFormat format) noexcept;
/// ".pgm" selects PGM; anything else is PNG.
ImageFormat format_for_path(std::string_view path) noexcept;

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace restore
