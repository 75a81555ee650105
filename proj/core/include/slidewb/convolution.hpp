#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slidewb {

enum class SurroundKind { CrossAverage, Gaussian };

/// Square (2r+1)x(2r+1) kernel, row-major, offsets in [-r, r].
class Kernel2D {
public:
    Kernel2D(int radius, std::vector<double> weights);

    int radius() const noexcept { return radius_; }
    int side() const noexcept { return 2 * radius_ + 1; }
    double at(int dx, int dy) const {
        return weights_[static_cast<std::size_t>((dy + radius_) * side() + (dx + radius_))];
    }
    std::span<const double> weights() const noexcept { return weights_; }

private:
    int radius_;
    std::vector<double> weights_;
};

/// Kernel radius used for a Gaussian surround: ceil(3 sigma), at least 1.
int gaussian_radius(double sigma);

/// Normalized 1-D Gaussian taps for offsets [-radius, radius].
std::vector<double> gaussian_taps(double sigma, int radius);

/**
 * Normalized surround function F over a square window.
 *
 * Gaussian: F = C exp(-(x^2+y^2) / (2 sigma^2)).
 * Cross average: F = C / (x^2+y^2), with the undefined centre cell set to
 * the distance-1 value before normalization. sigma is ignored for it.
 * C is whatever makes the weights sum to one.
 */
Kernel2D surround_kernel(SurroundKind kind, double sigma, int radius);

/// Half-sample symmetric reflection of an index into [0, n). Handles
/// offsets larger than n by folding periodically (period 2n).
std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) noexcept;

/// Row-major plane used internally by the convolution routines.
struct Plane {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> data;
};

/// Direct 2-D convolution with mirror borders. O(W H K^2).
Plane convolve_direct(const Plane& in, const Kernel2D& kernel);

/// Separable convolution with a symmetric 1-D kernel applied along rows and
/// then columns, mirror borders. taps.size() must be odd.
Plane convolve_separable(const Plane& in, std::span<const double> taps);

}  // namespace slidewb
