#include "slidewb/balance.hpp"

#include "slidewb/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slidewb {

namespace {

[[noreturn]] void degenerate(std::size_t c, const std::string& why) {
    const char name = kChannelNames[c];
    throw DegenerateChannelError(name, std::string("channel '") + name + "' " + why);
}

}  // namespace

void BalanceOptions::validate() const {
    retinex.validate();
    if (!(stretch_low >= 0.0 && stretch_low < stretch_high && stretch_high <= 1.0)) {
        throw std::invalid_argument("stretch percentiles must satisfy 0 <= low < high <= 1");
    }
    if (!(reference_fraction > 0.0 && reference_fraction <= 1.0)) {
        throw std::invalid_argument("reference_fraction must lie in (0, 1]");
    }
}

std::array<ChannelMaximum, 3> white_patch_maxima(const ImageRGB& img) {
    std::array<ChannelMaximum, 3> out{};
    for (auto& m : out) m.value = -1.0;
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            const Rgb& p = img.at(x, y);
            for (std::size_t c = 0; c < 3; ++c) {
                if (p[c] > out[c].value) out[c] = {p[c], {x, y}};
            }
        }
    }
    return out;
}

BalanceResult white_patch_balance(const ImageRGB& img) {
    const auto maxima = white_patch_maxima(img);
    for (std::size_t c = 0; c < 3; ++c) {
        if (maxima[c].value <= 0.0) degenerate(c, "is identically zero");
    }
    std::vector<Rgb> out(img.pixels().begin(), img.pixels().end());
    for (Rgb& p : out) {
        // divide rather than multiply by the reciprocal so the maximum maps to exactly 1
        for (std::size_t c = 0; c < 3; ++c) p[c] = clamp_unit(p[c] / maxima[c].value);
    }
    return BalanceResult{
        ImageRGB(img.width(), img.height(), std::move(out)),
        Illuminant(maxima[0].value, maxima[1].value, maxima[2].value),
        "white_patch",
        Gains{1.0 / maxima[0].value, 1.0 / maxima[1].value, 1.0 / maxima[2].value},
        {}};
}

double nearest_rank_percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percentile must lie in [0,1]");
    const std::size_t n = values.size();
    const double rank = std::ceil(p * static_cast<double>(n));
    const std::size_t k = rank < 1.0 ? 0 : std::min(n - 1, static_cast<std::size_t>(rank) - 1);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k),
                     values.end());
    return values[k];
}

BalanceResult histogram_normalisation(const ImageRGB& img, double low, double high) {
    if (!(low >= 0.0 && low < high && high <= 1.0)) {
        throw std::invalid_argument("stretch percentiles must satisfy 0 <= low < high <= 1");
    }
    std::array<double, 3> lo{}, hi{};
    std::array<bool, 3> flat{};
    std::vector<char> flagged;
    for (std::size_t c = 0; c < 3; ++c) {
        const std::vector<double> ch = img.channel(c);
        lo[c] = nearest_rank_percentile(ch, low);
        hi[c] = nearest_rank_percentile(ch, high);
        flat[c] = !(hi[c] > lo[c]);
        if (flat[c]) flagged.push_back(kChannelNames[c]);
    }

    std::vector<Rgb> out(img.pixels().begin(), img.pixels().end());
    for (Rgb& p : out) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (!flat[c]) p[c] = clamp_unit((p[c] - lo[c]) / (hi[c] - lo[c]));
        }
    }
    Gains gains;
    std::array<double, 3> g{1.0, 1.0, 1.0};
    for (std::size_t c = 0; c < 3; ++c) {
        if (!flat[c]) g[c] = 1.0 / (hi[c] - lo[c]);
    }
    gains = {g[0], g[1], g[2]};

    // A black channel has no upper percentile to report; fall back to the
    // neutral reference so the result stays a valid illuminant.
    const bool all_zero = hi[0] == 0.0 && hi[1] == 0.0 && hi[2] == 0.0;
    Illuminant estimate = all_zero ? Illuminant::neutral() : Illuminant(hi[0], hi[1], hi[2]);

    return BalanceResult{ImageRGB(img.width(), img.height(), std::move(out)), estimate,
                         "histogram_normalisation", gains, std::move(flagged)};
}

BalanceResult gray_world(const ImageRGB& img) {
    std::array<double, 3> mean{};
    for (const Rgb& p : img.pixels()) {
        for (std::size_t c = 0; c < 3; ++c) mean[c] += p[c];
    }
    const auto n = static_cast<double>(img.size());
    for (std::size_t c = 0; c < 3; ++c) {
        mean[c] /= n;
        if (mean[c] <= 0.0) degenerate(c, "has zero mean");
    }
    const double gray = (mean[0] + mean[1] + mean[2]) / 3.0;
    const Gains gains{gray / mean[0], gray / mean[1], gray / mean[2]};
    BalanceResult result{apply_gains(img, gains), Illuminant(mean[0], mean[1], mean[2]),
                         "gray_world", gains, {}};
    return result;
}

BalanceResult white_patch_retinex(const ImageRGB& img, const RetinexParams& params) {
    RetinexParams gauss = params;
    gauss.kernel = SurroundKind::Gaussian;
    gauss.validate();

    std::array<double, 3> anchor{};
    for (std::size_t c = 0; c < 3; ++c) {
        const LightnessMap response = ssr(channel_image(img, c), gauss);
        auto v = response.values();
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        // Flat response (up to convolution rounding): no retinex anchor exists.
        if (*hi - *lo <= 1e-12) {
            BalanceResult fallback = white_patch_balance(img);
            fallback.method_name = "white_patch_retinex";
            return fallback;
        }
        const auto at = static_cast<std::size_t>(hi - v.begin());  // first maximum
        anchor[c] = img.pixels()[at][c];
        if (anchor[c] <= 0.0) degenerate(c, "is zero at its retinex white point");
    }

    std::vector<Rgb> out(img.pixels().begin(), img.pixels().end());
    for (Rgb& p : out) {
        for (std::size_t c = 0; c < 3; ++c) p[c] = clamp_unit(p[c] / anchor[c]);
    }
    return BalanceResult{ImageRGB(img.width(), img.height(), std::move(out)),
                         Illuminant(anchor[0], anchor[1], anchor[2]), "white_patch_retinex",
                         Gains{1.0 / anchor[0], 1.0 / anchor[1], 1.0 / anchor[2]},
                         {}};
}

ImageRGB average_illuminant(const ImageRGB& a, const ImageRGB& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("average_illuminant: image dimensions differ");
    }
    auto pa = a.pixels();
    auto pb = b.pixels();
    std::vector<Rgb> out(pa.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t c = 0; c < 3; ++c) out[i][c] = 0.5 * (pa[i][c] + pb[i][c]);
    }
    return ImageRGB(a.width(), a.height(), std::move(out));
}

Gains von_kries_gains(const Illuminant& illum, const Illuminant& target) {
    for (std::size_t c = 0; c < 3; ++c) {
        if (illum[c] <= 0.0) degenerate(c, "of the illuminant is zero");
    }
    return {target.r() / illum.r(), target.g() / illum.g(), target.b() / illum.b()};
}

ImageRGB apply_gains(const ImageRGB& img, const Gains& gains) {
    std::vector<Rgb> out(img.pixels().begin(), img.pixels().end());
    for (Rgb& p : out) {
        for (std::size_t c = 0; c < 3; ++c) p[c] = clamp_unit(p[c] * gains[c]);
    }
    return ImageRGB(img.width(), img.height(), std::move(out));
}

ImageRGB chromatic_adaptation(const ImageRGB& img, const Illuminant& illum,
                              const Illuminant& target) {
    return apply_gains(img, von_kries_gains(illum, target));
}

Illuminant neutral_like(const Illuminant& like) {
    const double v = like.norm() / std::sqrt(3.0);
    return Illuminant(v, v, v);
}

NprTrace normal_patch_retinex_trace(const ImageRGB& img, const BalanceOptions& options) {
    options.validate();
    BalanceResult normalised =
        histogram_normalisation(img, options.stretch_low, options.stretch_high);
    BalanceResult white = white_patch_retinex(img, options.retinex);
    ImageRGB average = average_illuminant(normalised.corrected, white.corrected);

    const ImageGray brightness = rgb_to_hsv_value(average);
    std::vector<std::size_t> reference =
        brightest_indices(brightness.values(), options.reference_fraction);

    std::array<double, 3> source_sum{};
    std::array<double, 3> average_sum{};
    auto src = img.pixels();
    auto avg = average.pixels();
    for (std::size_t i : reference) {
        for (std::size_t c = 0; c < 3; ++c) {
            source_sum[c] += src[i][c];
            average_sum[c] += avg[i][c];
        }
    }
    std::array<double, 3> e{};
    for (std::size_t c = 0; c < 3; ++c) {
        if (average_sum[c] <= 0.0 || source_sum[c] <= 0.0) {
            degenerate(c, "has no signal on the white reference pixels");
        }
        e[c] = source_sum[c] / average_sum[c];
    }
    const Illuminant estimate(e[0], e[1], e[2]);
    const Gains gains = von_kries_gains(estimate, neutral_like(estimate));

    BalanceResult result{apply_gains(img, gains), estimate, "normal_patch_retinex", gains, {}};
    for (char ch : normalised.degenerate_channels) result.degenerate_channels.push_back(ch);

    return NprTrace{std::move(normalised), std::move(white), std::move(average),
                    std::move(reference), std::move(result)};
}

BalanceResult normal_patch_retinex(const ImageRGB& img, const BalanceOptions& options) {
    return normal_patch_retinex_trace(img, options).result;
}

BalanceResult normal_patch_retinex(const ImageRGB& img, const RetinexParams& params) {
    BalanceOptions options;
    options.retinex = params;
    return normal_patch_retinex(img, options);
}

}  // namespace slidewb
