#pragma once

#include "slidewb/image.hpp"

#include <array>
#include <span>
#include <vector>

namespace slidewb {

/// RGB direction of a light source. Components are finite, non-negative and
/// not all zero.
class Illuminant {
public:
    Illuminant(double r, double g, double b);
    explicit Illuminant(const Rgb& rgb) : Illuminant(rgb.r, rgb.g, rgb.b) {}

    static Illuminant neutral() { return Illuminant(1.0, 1.0, 1.0); }

    double r() const noexcept { return rgb_.r; }
    double g() const noexcept { return rgb_.g; }
    double b() const noexcept { return rgb_.b; }
    double operator[](std::size_t c) const noexcept { return rgb_[c]; }
    const Rgb& rgb() const noexcept { return rgb_; }

    double norm() const noexcept;
    std::array<double, 3> unit_direction() const noexcept;

    friend bool operator==(const Illuminant&, const Illuminant&) = default;

private:
    Rgb rgb_;
};

/// Diagonal (von Kries) channel gains.
struct Gains {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;

    double operator[](std::size_t c) const noexcept { return c == 0 ? r : (c == 1 ? g : b); }
    friend bool operator==(const Gains&, const Gains&) = default;
};

/// Indices of the ceil(fraction * n) largest values (at least one), largest
/// first; equal values are ordered by index so the set is deterministic.
std::vector<std::size_t> brightest_indices(std::span<const double> values, double fraction);

inline constexpr double kDefaultTopFraction = 0.05;

/**
 * Mean RGB of the brightest `top_fraction` of pixels ranked by HSV value.
 *
 * On transmitted-light slides those pixels are background glass, so the mean
 * is the colour of the light that reached the sensor.
 */
Illuminant estimate_scene_illuminant(const ImageRGB& img,
                                     double top_fraction = kDefaultTopFraction);

}  // namespace slidewb
