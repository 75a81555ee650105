#include "synthetic_slide.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace slidewb::synth {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    // 53 random mantissa bits; avoids implementation-defined distributions
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double normal(std::mt19937_64& rng) {
    const double u1 = uniform(rng, 0.0, 1.0);
    const double u2 = uniform(rng, 0.0, 1.0);
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ImageRGB random_image(std::size_t width, std::size_t height, std::mt19937_64& rng, double lo,
                      double hi) {
    std::vector<Rgb> data(width * height);
    for (Rgb& p : data) p = {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
    return ImageRGB(width, height, std::move(data));
}

Illuminant cast_at_angle(double degrees, std::mt19937_64& rng) {
    const double s = 1.0 / std::sqrt(3.0);
    const std::array<double, 3> n{s, s, s};
    // orthonormal basis of the plane perpendicular to neutral
    const std::array<double, 3> u{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    const std::array<double, 3> v{1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
    const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double th = degrees * std::numbers::pi / 180.0;
    std::array<double, 3> d{};
    for (std::size_t c = 0; c < 3; ++c) {
        d[c] = std::cos(th) * n[c] + std::sin(th) * (std::cos(phi) * u[c] + std::sin(phi) * v[c]);
    }
    const double m = std::max({d[0], d[1], d[2]});
    return Illuminant(d[0] / m, d[1] / m, d[2] / m);
}

namespace {

struct Stain {
    std::array<double, 3> transmittance;  // at full density
};

// Rough transmittance colours of common stains at full density.
constexpr std::array<Stain, 5> kStains{{
    {{0.35, 0.25, 0.60}},  // hematoxylin, blue-purple
    {{0.90, 0.45, 0.65}},  // phloxine / eosin, pink
    {{0.85, 0.70, 0.35}},  // saffron, yellow
    {{0.55, 0.38, 0.25}},  // DAB, brown
    {{0.45, 0.50, 0.75}},  // counterstain, pale blue
}};

}  // namespace

SyntheticSlide make_slide(const SlideSpec& spec, const Illuminant& cast, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t w = spec.width;
    const std::size_t h = spec.height;
    // per-pixel transmittance of the specimen, starts as clear glass
    std::vector<std::array<double, 3>> trans(w * h, {1.0, 1.0, 1.0});
    std::vector<bool> bg(w * h, true);
    std::size_t covered = 0;
    const auto limit = static_cast<std::size_t>(spec.max_tissue_cover * static_cast<double>(w * h));

    const double scale = static_cast<double>(std::min(w, h));
    for (int blob = 0; blob < 400 && covered < limit; ++blob) {
        const Stain& stain = kStains[rng() % kStains.size()];
        const double cx = uniform(rng, 0.0, static_cast<double>(w));
        const double cy = uniform(rng, 0.0, static_cast<double>(h));
        const double ra = uniform(rng, 0.03, 0.12) * scale;
        const double rb = uniform(rng, 0.5, 1.0) * ra;
        const double ang = uniform(rng, 0.0, std::numbers::pi);
        const double density = uniform(rng, 0.5, 1.0);
        const double ca = std::cos(ang), sa = std::sin(ang);
        const auto x0 = static_cast<std::size_t>(std::max(0.0, cx - ra));
        const auto x1 = static_cast<std::size_t>(std::min(static_cast<double>(w), cx + ra + 1));
        const auto y0 = static_cast<std::size_t>(std::max(0.0, cy - ra));
        const auto y1 = static_cast<std::size_t>(std::min(static_cast<double>(h), cy + ra + 1));
        for (std::size_t y = y0; y < y1; ++y) {
            for (std::size_t x = x0; x < x1; ++x) {
                const double dx = static_cast<double>(x) - cx;
                const double dy = static_cast<double>(y) - cy;
                const double u = (ca * dx + sa * dy) / ra;
                const double v = (-sa * dx + ca * dy) / rb;
                const double r2 = u * u + v * v;
                if (r2 > 1.0) continue;
                // soft edge: density falls off towards the rim
                const double d = density * (1.0 - 0.5 * r2);
                const std::size_t i = y * w + x;
                for (std::size_t c = 0; c < 3; ++c) {
                    trans[i][c] *= std::pow(stain.transmittance[c], d);
                }
                if (bg[i]) {
                    bg[i] = false;
                    ++covered;
                }
            }
        }
    }

    std::vector<Rgb> data(w * h);
    const double cxm = 0.5 * static_cast<double>(w - 1);
    const double cym = 0.5 * static_cast<double>(h - 1);
    const double rmax2 = cxm * cxm + cym * cym;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t i = y * w + x;
            const double dx = static_cast<double>(x) - cxm;
            const double dy = static_cast<double>(y) - cym;
            const double vig = 1.0 - spec.vignetting * (dx * dx + dy * dy) / std::max(rmax2, 1.0);
            Rgb p;
            for (std::size_t c = 0; c < 3; ++c) {
                const double clean = spec.background * vig * trans[i][c] * cast[c];
                p[c] = clamp_unit(clean * (1.0 + spec.noise_sigma * normal(rng)));
            }
            data[i] = p;
        }
    }

    const double angle = [&] {
        const auto a = cast.unit_direction();
        const double dot = (a[0] + a[1] + a[2]) / std::sqrt(3.0);
        return std::acos(std::clamp(dot, -1.0, 1.0)) * 180.0 / std::numbers::pi;
    }();
    return SyntheticSlide{ImageRGB(w, h, std::move(data)), cast, angle,
                          static_cast<double>(w * h - covered) / static_cast<double>(w * h),
                          std::move(bg)};
}

std::vector<SyntheticSlide> make_cast_corpus(std::size_t count, const SlideSpec& spec,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SyntheticSlide> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double degrees = uniform(rng, 2.0, 10.0);
        const Illuminant cast = cast_at_angle(degrees, rng);
        out.push_back(make_slide(spec, cast, rng()));
    }
    return out;
}

}  // namespace slidewb::synth
