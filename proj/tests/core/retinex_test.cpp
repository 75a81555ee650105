#include "slidewb/retinex.hpp"

#include "synthetic_slide.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace slidewb;

namespace {

ImageGray random_gray(std::size_t w, std::size_t h, std::mt19937_64& rng, double lo = 0.0,
                      double hi = 1.0) {
    std::vector<double> v(w * h);
    for (double& x : v) x = synth::uniform(rng, lo, hi);
    return ImageGray(w, h, std::move(v));
}

// Gaussian blur with directly evaluated 2-D weights and reflected borders.
std::vector<double> oracle_blur(const ImageGray& img, double sigma) {
    const long r = static_cast<long>(std::max(1.0, std::ceil(3.0 * sigma)));
    const long w = static_cast<long>(img.width());
    const long h = static_cast<long>(img.height());
    auto reflect = [](long i, long n) {
        while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - 1 - i;
        return static_cast<std::size_t>(i);
    };
    double total = 0.0;
    for (long dy = -r; dy <= r; ++dy)
        for (long dx = -r; dx <= r; ++dx) total += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
    std::vector<double> out(img.size());
    for (long y = 0; y < h; ++y) {
        for (long x = 0; x < w; ++x) {
            double acc = 0.0;
            for (long dy = -r; dy <= r; ++dy)
                for (long dx = -r; dx <= r; ++dx)
                    acc += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)) / total *
                           img.at(reflect(x + dx, w), reflect(y + dy, h));
            out[static_cast<std::size_t>(y * w + x)] = acc;
        }
    }
    return out;
}

}  // namespace

TEST(DeltaThreshold, Examples) {
    EXPECT_EQ(delta_threshold(0.3, 0.1), 0.3);
    EXPECT_EQ(delta_threshold(0.05, 0.1), 0.0);
    EXPECT_EQ(delta_threshold(0.1, 0.1), 0.1);
    EXPECT_EQ(delta_threshold(-0.2, 0.1), -0.2);
    EXPECT_EQ(delta_threshold(0.0, 0.0), 0.0);
}

TEST(DeltaThreshold, IsOdd) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double s = synth::uniform(rng, -2.0, 2.0);
        const double t = synth::uniform(rng, 0.0, 1.0);
        EXPECT_EQ(delta_threshold(-s, t), -delta_threshold(s, t));
    }
}

TEST(PathLightness, Examples) {
    RetinexParams p;
    const ImageGray uniform(4, 4, 0.6);
    const std::vector<PixelCoord> path{{0, 0}, {1, 0}, {1, 1}, {2, 2}};
    EXPECT_EQ(path_lightness(uniform, path, p), 0.0);

    const ImageGray two(2, 1, std::vector<double>{0.5, 0.25});
    p.threshold = 0.0;
    const std::vector<PixelCoord> step{{0, 0}, {1, 0}};
    const double eps = p.epsilon;
    EXPECT_DOUBLE_EQ(path_lightness(two, step, p), std::log((0.5 + eps) / (0.25 + eps)));

    const ImageGray close(2, 1, std::vector<double>{0.5, 0.49});
    p.threshold = 0.1;
    EXPECT_EQ(path_lightness(close, step, p), 0.0);
}

TEST(PathLightness, Errors) {
    const ImageGray img(3, 3, 0.5);
    RetinexParams p;
    const std::vector<PixelCoord> single{{0, 0}};
    const std::vector<PixelCoord> outside{{0, 0}, {3, 0}};
    EXPECT_THROW(path_lightness(img, single, p), std::invalid_argument);
    EXPECT_THROW(path_lightness(img, outside, p), std::invalid_argument);
}

// With no threshold the ratios telescope to the end-point ratio.
TEST(PathLightness, TelescopesWithoutThreshold) {
    std::mt19937_64 rng(2);
    RetinexParams p;
    p.threshold = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ImageGray img = random_gray(8, 8, rng);
        const PixelCoord target{rng() % 8, rng() % 8};
        const auto path = sample_path(8, 8, target, 1 + static_cast<int>(rng() % 40), rng);
        const double want = std::log((img.at(path.front()) + p.epsilon) / (img.at(target) + p.epsilon));
        EXPECT_NEAR(path_lightness(img, path, p), want, 1e-12);
    }
}

TEST(SamplePath, ShapeAndConnectivity) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t w = 1 + rng() % 6;
        const std::size_t h = 2 + rng() % 6;
        const PixelCoord target{rng() % w, rng() % h};
        const int steps = 1 + static_cast<int>(rng() % 30);
        const auto path = sample_path(w, h, target, steps, rng);
        ASSERT_EQ(path.size(), static_cast<std::size_t>(steps) + 1);
        EXPECT_EQ(path.back(), target);
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            EXPECT_LT(path[k].x, w);
            EXPECT_LT(path[k].y, h);
            const auto dx = static_cast<long>(path[k].x) - static_cast<long>(path[k + 1].x);
            const auto dy = static_cast<long>(path[k].y) - static_cast<long>(path[k + 1].y);
            EXPECT_LE(std::abs(dx), 1);
            EXPECT_LE(std::abs(dy), 1);
            EXPECT_FALSE(dx == 0 && dy == 0);
        }
    }
    EXPECT_THROW(sample_path(1, 1, {0, 0}, 3, rng), std::invalid_argument);
    EXPECT_THROW(sample_path(2, 2, {2, 0}, 3, rng), std::invalid_argument);
}

TEST(SamplePath, VisitsAllNeighbours) {
    std::mt19937_64 rng(9);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto path = sample_path(3, 3, {1, 1}, 1, rng);
        seen.insert({path.front().x, path.front().y});
    }
    EXPECT_EQ(seen.size(), 8u);
}

TEST(RetinexLightness, UniformImageIsZero) {
    const ImageGray img(6, 5, 0.4);
    RetinexParams p;
    EXPECT_EQ(retinex_lightness(img, {2, 2}, p), 0.0);
    p.num_paths = 1;
    EXPECT_EQ(retinex_lightness(img, {0, 4}, p), 0.0);
}

// Recomputes the mean from the published paths with a separate loop.
TEST(RetinexLightness, CheckerboardMatchesPathAverage) {
    std::vector<double> v(64);
    for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) v[y * 8 + x] = (x + y) % 2 ? 0.8 : 0.2;
    const ImageGray img(8, 8, v);
    RetinexParams p;
    p.num_paths = 64;
    p.path_length = 10;
    p.rng_seed = 42;
    for (const PixelCoord t : {PixelCoord{0, 0}, PixelCoord{3, 4}, PixelCoord{7, 7}}) {
        const auto paths = sample_paths(8, 8, t, p);
        ASSERT_EQ(paths.size(), 64u);
        double sum = 0.0;
        for (const auto& path : paths) {
            double s = 0.0;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
                const double r = std::log((v[path[k].y * 8 + path[k].x] + p.epsilon) /
                                          (v[path[k + 1].y * 8 + path[k + 1].x] + p.epsilon));
                if (std::abs(r) >= p.threshold) s += r;
            }
            sum += s;
        }
        EXPECT_NEAR(retinex_lightness(img, t, p), sum / 64.0, 1e-12);
    }
}

TEST(RetinexLightness, DeterministicPerSeed) {
    std::mt19937_64 rng(3);
    const ImageGray img = random_gray(10, 10, rng);
    RetinexParams p;
    EXPECT_EQ(retinex_lightness(img, {4, 4}, p), retinex_lightness(img, {4, 4}, p));
    RetinexParams q = p;
    q.rng_seed = 1;
    EXPECT_NE(sample_paths(10, 10, {4, 4}, p), sample_paths(10, 10, {4, 4}, q));
}

TEST(RetinexLightness, ExposureInvariant) {
    std::mt19937_64 rng(4);
    RetinexParams p;
    p.epsilon = 1e-12;
    for (int trial = 0; trial < 20; ++trial) {
        const ImageGray img = random_gray(8, 8, rng, 0.2, 0.9);
        const double k = synth::uniform(rng, 0.3, 1.1);
        std::vector<double> scaled(img.values().begin(), img.values().end());
        for (double& x : scaled) x = std::min(1.0, x * k);
        if (k > 1.0) continue;  // clipping would break the identity
        const ImageGray img2(8, 8, scaled);
        const PixelCoord t{rng() % 8, rng() % 8};
        EXPECT_NEAR(retinex_lightness(img, t, p), retinex_lightness(img2, t, p), 1e-6);
    }
}

TEST(Ssr, ConstantImageIsZero) {
    RetinexParams p;
    p.sigma = 5.0;
    const LightnessMap m = ssr(ImageGray(12, 9, 0.7), p);
    for (double v : m.values()) EXPECT_NEAR(v, 0.0, 1e-12);
    p.kernel = SurroundKind::CrossAverage;
    p.cross_radius = 3;
    const LightnessMap cross = ssr(ImageGray(12, 9, 0.7), p);
    for (double v : cross.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Ssr, BrightPixelWithCrossSurround) {
    std::vector<double> v(25, 0.0);
    v[12] = 1.0;
    RetinexParams p;
    p.kernel = SurroundKind::CrossAverage;
    p.cross_radius = 1;
    const LightnessMap m = ssr(ImageGray(5, 5, v), p);
    // kernel weights before normalization: centre 1, edges 1, corners 1/2 -> total 7
    const double eps = p.epsilon;
    EXPECT_NEAR(m.at(2, 2), std::log(1.0 + eps) - std::log(1.0 / 7.0 + eps), 1e-12);
    EXPECT_GT(m.at(2, 2), 0.0);
    EXPECT_NEAR(m.at(1, 2), std::log(eps) - std::log(1.0 / 7.0 + eps), 1e-12);
}

TEST(Ssr, MatchesDirectOracle) {
    std::mt19937_64 rng(6);
    for (double sigma : {1.0, 3.0, 80.0}) {
        const ImageGray img = random_gray(16, 16, rng);
        RetinexParams p;
        p.sigma = sigma;
        const LightnessMap m = ssr(img, p);
        const auto blur = oracle_blur(img, sigma);
        for (std::size_t i = 0; i < img.size(); ++i) {
            const double want = std::log(img.values()[i] + p.epsilon) - std::log(blur[i] + p.epsilon);
            EXPECT_NEAR(m.values()[i], want, 1e-9);
        }
    }
}

TEST(Ssr, ScaleInvariantWithTinyEpsilon) {
    std::mt19937_64 rng(7);
    RetinexParams p;
    p.sigma = 4.0;
    p.epsilon = 1e-12;
    const ImageGray img = random_gray(20, 14, rng, 0.1, 0.9);
    std::vector<double> scaled(img.values().begin(), img.values().end());
    for (double& x : scaled) x *= 0.5;
    const LightnessMap a = ssr(img, p);
    const LightnessMap b = ssr(ImageGray(20, 14, scaled), p);
    for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-9);
}

TEST(Msr, SingleScaleEqualsSsr) {
    std::mt19937_64 rng(8);
    const ImageGray img = random_gray(17, 11, rng);
    RetinexParams p;
    p.sigma = 6.0;
    p.msr_scales = {{6.0, 1.0}};
    EXPECT_EQ(msr(img, p), ssr(img, p));
}

TEST(Msr, WeightedMeanOfScales) {
    std::mt19937_64 rng(9);
    const ImageGray img = random_gray(17, 11, rng);
    RetinexParams p;
    p.msr_scales = {{2.0, 0.5}, {9.0, 0.5}};
    RetinexParams a = p, b = p;
    a.sigma = 2.0;
    b.sigma = 9.0;
    const LightnessMap m = msr(img, p);
    const LightnessMap sa = ssr(img, a), sb = ssr(img, b);
    for (std::size_t i = 0; i < img.size(); ++i) {
        EXPECT_NEAR(m.values()[i], 0.5 * (sa.values()[i] + sb.values()[i]), 1e-14);
    }
    const LightnessMap flat = msr(ImageGray(9, 9, 0.3), p);
    for (double v : flat.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Msr, Errors) {
    RetinexParams p;
    p.msr_scales.clear();
    EXPECT_THROW(msr(ImageGray(4, 4, 0.5), p), std::invalid_argument);
    p.msr_scales = {{5.0, 0.4}, {10.0, 0.4}};
    EXPECT_THROW(msr(ImageGray(4, 4, 0.5), p), std::invalid_argument);
}

TEST(LightnessToImage, Examples) {
    const ImageGray g = lightness_to_image(LightnessMap(3, 1, {-1.0, 0.0, 3.0}));
    EXPECT_EQ(g.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(g.at(1, 0), 0.25);
    EXPECT_EQ(g.at(2, 0), 1.0);
    const ImageGray c = lightness_to_image(LightnessMap(2, 2, std::vector<double>(4, -2.5)));
    for (double v : c.values()) EXPECT_EQ(v, 0.5);
}

TEST(RetinexParams, Validation) {
    RetinexParams p;
    EXPECT_NO_THROW(p.validate());
    p.threshold = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.num_paths = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.epsilon = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}
