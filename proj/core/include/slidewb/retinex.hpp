#pragma once

#include "slidewb/convolution.hpp"
#include "slidewb/image.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace slidewb {

struct ScaleWeight {
    double sigma = 80.0;
    double weight = 1.0;

    friend bool operator==(const ScaleWeight&, const ScaleWeight&) = default;
};

/// Parameters shared by the path-based and surround-based retinex variants.
struct RetinexParams {
    double threshold = 0.05;   // contrast threshold t in [0,1]
    int num_paths = 64;        // paths averaged per target pixel
    int path_length = 32;      // steps per random walk (pixels = steps + 1)
    double sigma = 80.0;       // Gaussian surround scale, pixels
    SurroundKind kernel = SurroundKind::Gaussian;
    int cross_radius = 16;     // window radius for the cross-average surround
    std::vector<ScaleWeight> msr_scales{{15.0, 1.0 / 3.0}, {80.0, 1.0 / 3.0}, {250.0, 1.0 / 3.0}};
    double epsilon = 1.0 / 255.0;
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    friend bool operator==(const RetinexParams&, const RetinexParams&) = default;
};

/// Log-domain lightness; unbounded but always finite.
class LightnessMap {
public:
    LightnessMap(std::size_t width, std::size_t height, std::vector<double> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    double at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    std::span<const double> values() const noexcept { return data_; }

    friend bool operator==(const LightnessMap&, const LightnessMap&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

/// Contrast threshold: s if |s| >= t, else 0.
double delta_threshold(double s, double t) noexcept;

/// Sum of thresholded log ratios log(I(p_k)/I(p_{k+1})) along a path ordered
/// from its far end to the target. Throws if the path has fewer than two
/// pixels or leaves the image.
double path_lightness(const ImageGray& img, std::span<const PixelCoord> path,
                      const RetinexParams& params);

/// Per-target seed derived from the run seed and the target position, so the
/// paths for a pixel do not depend on evaluation order.
std::uint64_t path_seed(std::uint64_t run_seed, PixelCoord target) noexcept;

/// One 8-connected random walk of `steps` steps starting at `target`, returned
/// reversed so that the last element is the target. Moves that would leave
/// the image are never drawn.
std::vector<PixelCoord> sample_path(std::size_t width, std::size_t height, PixelCoord target,
                                    int steps, std::mt19937_64& rng);

/// All num_paths walks used by retinex_lightness for this target.
std::vector<std::vector<PixelCoord>> sample_paths(std::size_t width, std::size_t height,
                                                  PixelCoord target,
                                                  const RetinexParams& params);

/// Mean path lightness over num_paths seeded random walks ending at target.
double retinex_lightness(const ImageGray& img, PixelCoord target, const RetinexParams& params);

/// Single-scale retinex: log(I + eps) - log(I * F + eps) with the surround
/// selected by params.kernel. Gaussian surrounds are applied separably.
LightnessMap ssr(const ImageGray& channel, const RetinexParams& params);

/// Weighted sum of SSR maps over params.msr_scales.
LightnessMap msr(const ImageGray& channel, const RetinexParams& params);

/// Affine rescale of [min, max] to [0,1]; a constant map becomes 0.5.
ImageGray lightness_to_image(const LightnessMap& map);

}  // namespace slidewb
