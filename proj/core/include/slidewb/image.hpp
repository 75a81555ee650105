#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace slidewb {

/// One pixel of a linear RGB raster. Channels are indexed 0=r, 1=g, 2=b.
struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    double& operator[](std::size_t c) noexcept { return c == 0 ? r : (c == 1 ? g : b); }
    double operator[](std::size_t c) const noexcept { return c == 0 ? r : (c == 1 ? g : b); }

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr std::array<char, 3> kChannelNames{'r', 'g', 'b'};

struct PixelCoord {
    std::size_t x = 0;  // column
    std::size_t y = 0;  // row

    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Luma weights used by to_gray (ITU-R BT.601).
struct LumaWeights {
    double r = 0.299;
    double g = 0.587;
    double b = 0.114;
};

inline constexpr LumaWeights kBt601{};

/**
 * Dense row-major RGB image with every channel finite and inside [0,1].
 *
 * The constructor rejects anything else, so an ImageRGB that exists is valid.
 * Operations that can leave the unit range (gains, stretches) clamp before
 * building their result.
 */
class ImageRGB {
public:
    ImageRGB(std::size_t width, std::size_t height, std::vector<Rgb> data);
    ImageRGB(std::size_t width, std::size_t height, Rgb fill);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    const Rgb& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    const Rgb& at(PixelCoord p) const { return at(p.x, p.y); }
    std::span<const Rgb> pixels() const noexcept { return data_; }

    /// Copies one channel out as a plain plane (row-major).
    std::vector<double> channel(std::size_t c) const;

    friend bool operator==(const ImageRGB&, const ImageRGB&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<Rgb> data_;
};

/// Single-channel counterpart of ImageRGB with the same validity rules.
class ImageGray {
public:
    ImageGray(std::size_t width, std::size_t height, std::vector<double> data);
    ImageGray(std::size_t width, std::size_t height, double fill);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    double at(PixelCoord p) const { return at(p.x, p.y); }
    std::span<const double> values() const noexcept { return data_; }

    friend bool operator==(const ImageGray&, const ImageGray&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

double clamp_unit(double v) noexcept;

/// Builds an ImageRGB from arbitrary channel values, clamping each into [0,1].
/// Non-finite values are rejected.
ImageRGB make_clamped(std::size_t width, std::size_t height, std::vector<Rgb> data);

/// Replicates a gray plane into three equal channels.
ImageRGB gray_to_rgb(const ImageGray& gray);

/// Extracts a channel as an ImageGray.
ImageGray channel_image(const ImageRGB& img, std::size_t c);

ImageGray to_gray(const ImageRGB& img, LumaWeights weights = kBt601);

/// HSV value component: max(r, g, b) per pixel.
ImageGray rgb_to_hsv_value(const ImageRGB& img);

}  // namespace slidewb
