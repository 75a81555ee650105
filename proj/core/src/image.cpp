#include "slidewb/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slidewb {

namespace {

void check_shape(std::size_t width, std::size_t height, std::size_t n) {
    if (width == 0 || height == 0) {
        throw std::invalid_argument("image dimensions must be at least 1x1");
    }
    if (n != width * height) {
        throw std::invalid_argument("image data length " + std::to_string(n) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

bool in_unit(double v) noexcept { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

ImageRGB::ImageRGB(std::size_t width, std::size_t height, std::vector<Rgb> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_shape(width_, height_, data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const Rgb& p = data_[i];
        if (!in_unit(p.r) || !in_unit(p.g) || !in_unit(p.b)) {
            throw std::invalid_argument("pixel " + std::to_string(i) +
                                        " has a channel outside [0,1]");
        }
    }
}

ImageRGB::ImageRGB(std::size_t width, std::size_t height, Rgb fill)
    : ImageRGB(width, height, std::vector<Rgb>(width * height, fill)) {}

std::vector<double> ImageRGB::channel(std::size_t c) const {
    std::vector<double> out(data_.size());
    std::transform(data_.begin(), data_.end(), out.begin(),
                   [c](const Rgb& p) { return p[c]; });
    return out;
}

ImageGray::ImageGray(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_shape(width_, height_, data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!in_unit(data_[i])) {
            throw std::invalid_argument("pixel " + std::to_string(i) + " is outside [0,1]");
        }
    }
}

ImageGray::ImageGray(std::size_t width, std::size_t height, double fill)
    : ImageGray(width, height, std::vector<double>(width * height, fill)) {}

double clamp_unit(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

ImageRGB make_clamped(std::size_t width, std::size_t height, std::vector<Rgb> data) {
    for (Rgb& p : data) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (!std::isfinite(p[c])) {
                throw std::invalid_argument("non-finite channel value");
            }
            p[c] = clamp_unit(p[c]);
        }
    }
    return ImageRGB(width, height, std::move(data));
}

ImageRGB gray_to_rgb(const ImageGray& gray) {
    std::vector<Rgb> data(gray.size());
    auto v = gray.values();
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = {v[i], v[i], v[i]};
    }
    return ImageRGB(gray.width(), gray.height(), std::move(data));
}

ImageGray channel_image(const ImageRGB& img, std::size_t c) {
    return ImageGray(img.width(), img.height(), img.channel(c));
}

ImageGray to_gray(const ImageRGB& img, LumaWeights weights) {
    std::vector<double> out(img.size());
    auto px = img.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y = weights.r * px[i].r + weights.g * px[i].g + weights.b * px[i].b;
        out[i] = clamp_unit(y);
    }
    return ImageGray(img.width(), img.height(), std::move(out));
}

ImageGray rgb_to_hsv_value(const ImageRGB& img) {
    std::vector<double> out(img.size());
    auto px = img.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::max({px[i].r, px[i].g, px[i].b});
    }
    return ImageGray(img.width(), img.height(), std::move(out));
}

}  // namespace slidewb
