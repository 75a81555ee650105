#pragma once

#include "slidewb/illuminant.hpp"
#include "slidewb/image.hpp"
#include "slidewb/retinex.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace slidewb {

struct BalanceResult {
    ImageRGB corrected;
    Illuminant estimated_illuminant;
    std::string method_name;
    Gains gains;
    // Channels the operator had to pass through untouched (e.g. a constant
    // channel under histogram stretching), as 'r', 'g', 'b'.
    std::vector<char> degenerate_channels;
};

/// Options for the balance operators beyond the retinex parameters.
struct BalanceOptions {
    RetinexParams retinex;
    double stretch_low = 0.01;   // lower percentile for histogram normalisation
    double stretch_high = 0.99;  // upper percentile
    // Share of Average Illuminant pixels, brightest first, used as the white
    // reference when Normal Patch Retinex collapses it to one illuminant.
    double reference_fraction = 0.05;

    void validate() const;
};

struct ChannelMaximum {
    double value = 0.0;
    PixelCoord where;
};

/// Per-channel maxima; ties resolve to the first pixel in row-major order.
std::array<ChannelMaximum, 3> white_patch_maxima(const ImageRGB& img);

/// Divides each channel by its maximum. Throws DegenerateChannelError when a
/// channel is identically zero.
BalanceResult white_patch_balance(const ImageRGB& img);

/// Per-channel affine stretch of the [low, high] percentiles onto [0,1] with
/// clipping. Percentiles use the nearest-rank rule. Constant channels pass
/// through and are reported in degenerate_channels.
BalanceResult histogram_normalisation(const ImageRGB& img, double low = 0.01,
                                      double high = 0.99);

/// Percentile of a sample by nearest rank: element ceil(p n) - 1 of the sorted
/// data (index 0 for p = 0).
double nearest_rank_percentile(std::vector<double> values, double p);

BalanceResult gray_world(const ImageRGB& img);

/**
 * White Patch anchored on the retinex response.
 *
 * Each channel is passed through Gaussian SSR; the first pixel holding the
 * largest SSR response is taken as that channel's white, and the channel is
 * divided by its original value there. A flat SSR map carries no anchor, so
 * the operator falls back to white_patch_balance.
 */
BalanceResult white_patch_retinex(const ImageRGB& img, const RetinexParams& params);

/// Pixelwise mean of two same-sized images.
ImageRGB average_illuminant(const ImageRGB& a, const ImageRGB& b);

/// target_c / illum_c per channel. Throws DegenerateChannelError on a zero
/// illuminant channel.
Gains von_kries_gains(const Illuminant& illum, const Illuminant& target);

/// Diagonal von Kries mapping of illum onto target, clamped to [0,1].
ImageRGB chromatic_adaptation(const ImageRGB& img, const Illuminant& illum,
                              const Illuminant& target);

/// Applies gains and clamps.
ImageRGB apply_gains(const ImageRGB& img, const Gains& gains);

/// Neutral illuminant with the same Euclidean norm as `like`.
Illuminant neutral_like(const Illuminant& like);

/// Intermediate images of one Normal Patch Retinex run.
struct NprTrace {
    BalanceResult normalised;     // histogram normalisation branch
    BalanceResult white_patch;    // White Patch Retinex branch
    ImageRGB average;             // Average Illuminant image
    std::vector<std::size_t> reference_pixels;
    BalanceResult result;
};

NprTrace normal_patch_retinex_trace(const ImageRGB& img, const BalanceOptions& options);

/**
 * Normal Patch Retinex white balance.
 *
 * The histogram-normalised and White-Patch-Retinex renderings of the input
 * are averaged pixel by pixel into the Average Illuminant image. Its
 * brightest pixels are where both branches agree the slide is white; the
 * channel ratio between the source and the Average Illuminant over those
 * pixels is the light colour, which is mapped onto neutral by von Kries
 * adaptation of the source.
 */
BalanceResult normal_patch_retinex(const ImageRGB& img, const BalanceOptions& options);
BalanceResult normal_patch_retinex(const ImageRGB& img, const RetinexParams& params);

}  // namespace slidewb
