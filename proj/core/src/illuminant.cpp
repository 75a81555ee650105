#include "slidewb/illuminant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slidewb {

Illuminant::Illuminant(double r, double g, double b) : rgb_{r, g, b} {
    for (double v : {r, g, b}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("illuminant components must be finite and non-negative");
        }
    }
    if (r == 0.0 && g == 0.0 && b == 0.0) {
        throw std::invalid_argument("illuminant must not be all zero");
    }
}

double Illuminant::norm() const noexcept {
    return std::sqrt(rgb_.r * rgb_.r + rgb_.g * rgb_.g + rgb_.b * rgb_.b);
}

std::array<double, 3> Illuminant::unit_direction() const noexcept {
    const double n = norm();
    return {rgb_.r / n, rgb_.g / n, rgb_.b / n};
}

std::vector<std::size_t> brightest_indices(std::span<const double> values, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("fraction must lie in (0, 1]");
    }
    if (values.empty()) return {};
    const std::size_t n = values.size();
    const auto count = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))), 1, n);

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto brighter = [&](std::size_t a, std::size_t b) {
        return values[a] != values[b] ? values[a] > values[b] : a < b;
    };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count - 1), idx.end(),
                     brighter);
    idx.resize(count);
    std::sort(idx.begin(), idx.end(), brighter);
    return idx;
}

Illuminant estimate_scene_illuminant(const ImageRGB& img, double top_fraction) {
    if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
        throw std::invalid_argument("top_fraction must lie in (0, 1]");
    }
    const ImageGray value = rgb_to_hsv_value(img);
    const auto idx = brightest_indices(value.values(), top_fraction);
    auto px = img.pixels();
    double r = 0.0, g = 0.0, b = 0.0;
    for (std::size_t i : idx) {
        r += px[i].r;
        g += px[i].g;
        b += px[i].b;
    }
    const auto n = static_cast<double>(idx.size());
    return Illuminant(r / n, g / n, b / n);
}

}  // namespace slidewb
