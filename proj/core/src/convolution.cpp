#include "slidewb/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slidewb {

Kernel2D::Kernel2D(int radius, std::vector<double> weights)
    : radius_(radius), weights_(std::move(weights)) {
    if (radius_ < 0 ||
        weights_.size() != static_cast<std::size_t>(side()) * static_cast<std::size_t>(side())) {
        throw std::invalid_argument("kernel weights do not match radius");
    }
}

int gaussian_radius(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be positive");
    }
    return std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
}

std::vector<double> gaussian_taps(double sigma, int radius) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sigma must be positive");
    }
    if (radius < 1) {
        throw std::invalid_argument("kernel radius must be at least 1");
    }
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int i = -radius; i <= radius; ++i) {
        taps[static_cast<std::size_t>(i + radius)] = std::exp(-static_cast<double>(i * i) * inv);
    }
    const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
    for (double& t : taps) t /= sum;
    return taps;
}

Kernel2D surround_kernel(SurroundKind kind, double sigma, int radius) {
    if (radius < 1) {
        throw std::invalid_argument("kernel radius must be at least 1");
    }
    if (kind == SurroundKind::Gaussian && (!(sigma > 0.0) || !std::isfinite(sigma))) {
        throw std::invalid_argument("sigma must be positive");
    }
    const int side = 2 * radius + 1;
    std::vector<double> w(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
    const double inv = kind == SurroundKind::Gaussian ? 1.0 / (2.0 * sigma * sigma) : 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const double d2 = static_cast<double>(dx * dx + dy * dy);
            double v;
            if (kind == SurroundKind::Gaussian) {
                v = std::exp(-d2 * inv);
            } else {
                v = d2 == 0.0 ? 1.0 : 1.0 / d2;  // centre takes the distance-1 value
            }
            w[static_cast<std::size_t>((dy + radius) * side + (dx + radius))] = v;
        }
    }
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= sum;
    return Kernel2D(radius, std::move(w));
}

std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto period = static_cast<std::ptrdiff_t>(2 * n);
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<std::ptrdiff_t>(n)) m = period - 1 - m;
    return static_cast<std::size_t>(m);
}

Plane convolve_direct(const Plane& in, const Kernel2D& kernel) {
    Plane out{in.width, in.height, std::vector<double>(in.data.size())};
    const int r = kernel.radius();
    for (std::size_t y = 0; y < in.height; ++y) {
        for (std::size_t x = 0; x < in.width; ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const std::size_t yy =
                    mirror_index(static_cast<std::ptrdiff_t>(y) + dy, in.height);
                const double* row = in.data.data() + yy * in.width;
                for (int dx = -r; dx <= r; ++dx) {
                    const std::size_t xx =
                        mirror_index(static_cast<std::ptrdiff_t>(x) + dx, in.width);
                    acc += kernel.at(dx, dy) * row[xx];
                }
            }
            out.data[y * in.width + x] = acc;
        }
    }
    return out;
}

namespace {

// Filters along y. Each output row accumulates whole input rows, so the
// inner loop is a contiguous axpy over x.
void filter_columns(const double* in, double* out, std::size_t width, std::size_t height,
                    std::span<const double> taps) {
    const auto r = static_cast<std::ptrdiff_t>(taps.size() / 2);
    const double* half = taps.data() + r;  // half[j] == taps[r + j] == taps[r - j]
    for (std::size_t y = 0; y < height; ++y) {
        double* dst = out + y * width;
        const double* centre = in + y * width;
        const double k0 = half[0];
        for (std::size_t x = 0; x < width; ++x) dst[x] = k0 * centre[x];
        for (std::ptrdiff_t j = 1; j <= r; ++j) {
            const double* up =
                in + mirror_index(static_cast<std::ptrdiff_t>(y) - j, height) * width;
            const double* down =
                in + mirror_index(static_cast<std::ptrdiff_t>(y) + j, height) * width;
            const double k = half[j];
            for (std::size_t x = 0; x < width; ++x) dst[x] += k * (up[x] + down[x]);
        }
    }
}

void transpose(const double* in, double* out, std::size_t width, std::size_t height) {
    constexpr std::size_t kBlock = 32;
    for (std::size_t y0 = 0; y0 < height; y0 += kBlock) {
        for (std::size_t x0 = 0; x0 < width; x0 += kBlock) {
            const std::size_t y1 = std::min(height, y0 + kBlock);
            const std::size_t x1 = std::min(width, x0 + kBlock);
            for (std::size_t y = y0; y < y1; ++y) {
                for (std::size_t x = x0; x < x1; ++x) out[x * height + y] = in[y * width + x];
            }
        }
    }
}

}  // namespace

Plane convolve_separable(const Plane& in, std::span<const double> taps) {
    if (taps.size() % 2 != 1) {
        throw std::invalid_argument("separable kernel must have odd length");
    }
    const std::size_t w = in.width;
    const std::size_t h = in.height;
    std::vector<double> a(in.data.size());
    std::vector<double> b(in.data.size());

    // Rows first: transpose so rows become columns, filter, transpose back.
    transpose(in.data.data(), a.data(), w, h);
    filter_columns(a.data(), b.data(), h, w, taps);
    transpose(b.data(), a.data(), h, w);
    filter_columns(a.data(), b.data(), w, h, taps);

    return Plane{w, h, std::move(b)};
}

}  // namespace slidewb
