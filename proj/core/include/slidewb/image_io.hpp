#pragma once

#include "slidewb/image.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace slidewb {

enum class BitDepth { Eight = 8, Sixteen = 16 };

struct LoadedImage {
    ImageRGB image;
    BitDepth depth;
    std::size_t source_channels;        // 1 or 3 after alpha removal
    std::vector<std::string> warnings;  // e.g. "alpha channel dropped"
};

/// Reads an 8- or 16-bit PNG/TIFF with 1, 3 or 4 channels. Values are divided
/// by the bit-depth maximum; gray files are replicated to RGB and an alpha
/// channel is dropped with a warning. Throws ImageIoError.
LoadedImage load_image_with_info(const std::filesystem::path& path);

ImageRGB load_image(const std::filesystem::path& path);

/// Writes an RGB image, quantizing with round-half-up. Format follows the
/// file extension (.png, .tif, .tiff). Throws ImageIoError.
void save_image(const ImageRGB& img, const std::filesystem::path& path,
                BitDepth depth = BitDepth::Eight);

/// Quantizes a [0,1] value to an integer code at the given depth.
unsigned quantize(double v, BitDepth depth) noexcept;

bool is_supported_image_path(const std::filesystem::path& path);

}  // namespace slidewb
