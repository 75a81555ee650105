#include "slidewb/retinex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slidewb {

void RetinexParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(threshold >= 0.0 && threshold <= 1.0)) fail("threshold must lie in [0,1]");
    if (num_paths < 1) fail("num_paths must be positive");
    if (path_length < 1) fail("path_length must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be positive");
    if (cross_radius < 1) fail("cross_radius must be at least 1");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be positive");
    double total = 0.0;
    for (const ScaleWeight& s : msr_scales) {
        if (!(s.sigma > 0.0) || !std::isfinite(s.sigma)) fail("msr scale sigma must be positive");
        if (!(s.weight >= 0.0) || !std::isfinite(s.weight)) fail("msr weights must be non-negative");
        total += s.weight;
    }
    if (!msr_scales.empty() && std::abs(total - 1.0) > 1e-9) {
        fail("msr weights must sum to 1 (got " + std::to_string(total) + ")");
    }
}

LightnessMap::LightnessMap(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width_ == 0 || height_ == 0 || data_.size() != width_ * height_) {
        throw std::invalid_argument("lightness map shape mismatch");
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("lightness map contains non-finite values");
    }
}

double delta_threshold(double s, double t) noexcept { return std::abs(s) >= t ? s : 0.0; }

double path_lightness(const ImageGray& img, std::span<const PixelCoord> path,
                      const RetinexParams& params) {
    if (path.size() < 2) {
        throw std::invalid_argument("a retinex path needs at least two pixels");
    }
    for (const PixelCoord& p : path) {
        if (p.x >= img.width() || p.y >= img.height()) {
            throw std::invalid_argument("path pixel out of bounds");
        }
    }
    const double eps = params.epsilon;
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const double ratio = std::log((img.at(path[k]) + eps) / (img.at(path[k + 1]) + eps));
        sum += delta_threshold(ratio, params.threshold);
    }
    return sum;
}

std::uint64_t path_seed(std::uint64_t run_seed, PixelCoord target) noexcept {
    // splitmix64 finalizer over the packed inputs
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(run_seed);
    h = mix(h ^ static_cast<std::uint64_t>(target.x));
    h = mix(h ^ (static_cast<std::uint64_t>(target.y) << 1));
    return h;
}

std::vector<PixelCoord> sample_path(std::size_t width, std::size_t height, PixelCoord target,
                                    int steps, std::mt19937_64& rng) {
    if (width * height < 2) {
        throw std::invalid_argument("cannot sample a path in a single-pixel image");
    }
    if (target.x >= width || target.y >= height) {
        throw std::invalid_argument("path target out of bounds");
    }
    static constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

    std::vector<PixelCoord> walk;
    walk.reserve(static_cast<std::size_t>(steps) + 1);
    walk.push_back(target);
    PixelCoord cur = target;
    for (int s = 0; s < steps; ++s) {
        int valid[8];
        int n = 0;
        for (int d = 0; d < 8; ++d) {
            const auto nx = static_cast<std::ptrdiff_t>(cur.x) + kDx[d];
            const auto ny = static_cast<std::ptrdiff_t>(cur.y) + kDy[d];
            if (nx >= 0 && ny >= 0 && nx < static_cast<std::ptrdiff_t>(width) &&
                ny < static_cast<std::ptrdiff_t>(height)) {
                valid[n++] = d;
            }
        }
        const int d = valid[rng() % static_cast<std::uint64_t>(n)];
        cur = {static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cur.x) + kDx[d]),
               static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cur.y) + kDy[d])};
        walk.push_back(cur);
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
}

std::vector<std::vector<PixelCoord>> sample_paths(std::size_t width, std::size_t height,
                                                  PixelCoord target,
                                                  const RetinexParams& params) {
    params.validate();
    std::mt19937_64 rng(path_seed(params.rng_seed, target));
    std::vector<std::vector<PixelCoord>> paths;
    paths.reserve(static_cast<std::size_t>(params.num_paths));
    for (int k = 0; k < params.num_paths; ++k) {
        paths.push_back(sample_path(width, height, target, params.path_length, rng));
    }
    return paths;
}

double retinex_lightness(const ImageGray& img, PixelCoord target, const RetinexParams& params) {
    const auto paths = sample_paths(img.width(), img.height(), target, params);
    double total = 0.0;
    for (const auto& path : paths) total += path_lightness(img, path, params);
    return total / static_cast<double>(paths.size());
}

namespace {

LightnessMap ssr_with_sigma(const ImageGray& channel, const RetinexParams& params, double sigma) {
    Plane in{channel.width(), channel.height(),
             std::vector<double>(channel.values().begin(), channel.values().end())};
    Plane blurred;
    if (params.kernel == SurroundKind::Gaussian) {
        const auto taps = gaussian_taps(sigma, gaussian_radius(sigma));
        blurred = convolve_separable(in, taps);
    } else {
        blurred = convolve_direct(in, surround_kernel(SurroundKind::CrossAverage, sigma,
                                                      params.cross_radius));
    }
    const double eps = params.epsilon;
    std::vector<double> out(in.data.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        // the blur of non-negative data is non-negative up to rounding
        const double surround = std::max(blurred.data[i], 0.0);
        out[i] = std::log(in.data[i] + eps) - std::log(surround + eps);
    }
    return LightnessMap(channel.width(), channel.height(), std::move(out));
}

}  // namespace

LightnessMap ssr(const ImageGray& channel, const RetinexParams& params) {
    params.validate();
    return ssr_with_sigma(channel, params, params.sigma);
}

LightnessMap msr(const ImageGray& channel, const RetinexParams& params) {
    params.validate();
    if (params.msr_scales.empty()) {
        throw std::invalid_argument("msr needs at least one scale");
    }
    std::vector<double> acc(channel.size(), 0.0);
    for (const ScaleWeight& s : params.msr_scales) {
        const LightnessMap r = ssr_with_sigma(channel, params, s.sigma);
        auto v = r.values();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s.weight * v[i];
    }
    return LightnessMap(channel.width(), channel.height(), std::move(acc));
}

ImageGray lightness_to_image(const LightnessMap& map) {
    auto v = map.values();
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(v.size(), 0.5);
    if (hi > lo) {
        const double span = hi - lo;
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = clamp_unit((v[i] - lo) / span);
    }
    return ImageGray(map.width(), map.height(), std::move(out));
}

}  // namespace slidewb
