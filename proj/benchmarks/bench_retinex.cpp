#include "slidewb/balance.hpp"
#include "slidewb/convolution.hpp"
#include "slidewb/retinex.hpp"

#include "synthetic_slide.hpp"

#include <benchmark/benchmark.h>

using namespace slidewb;

namespace {

ImageGray noise_plane(std::size_t side) {
    std::mt19937_64 rng(1);
    std::vector<double> v(side * side);
    for (double& x : v) x = synth::uniform(rng, 0.0, 1.0);
    return ImageGray(side, side, std::move(v));
}

void BM_SsrGaussian(benchmark::State& state) {
    const ImageGray img = noise_plane(static_cast<std::size_t>(state.range(0)));
    RetinexParams p;
    p.sigma = static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ssr(img, p));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(img.size()));
}
BENCHMARK(BM_SsrGaussian)->Args({512, 15})->Args({512, 80})->Args({512, 250})
    ->Unit(benchmark::kMillisecond);

void BM_SsrCrossAverage(benchmark::State& state) {
    const ImageGray img = noise_plane(256);
    RetinexParams p;
    p.kernel = SurroundKind::CrossAverage;
    p.cross_radius = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ssr(img, p));
}
BENCHMARK(BM_SsrCrossAverage)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_RetinexLightness(benchmark::State& state) {
    const ImageGray img = noise_plane(64);
    RetinexParams p;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(retinex_lightness(img, {i % 64, (i / 64) % 64}, p));
        ++i;
    }
}
BENCHMARK(BM_RetinexLightness);

void BM_NormalPatchRetinex(benchmark::State& state) {
    synth::SlideSpec spec;
    spec.width = spec.height = static_cast<std::size_t>(state.range(0));
    const auto slide = synth::make_slide(spec, Illuminant(1.0, 0.9, 0.75), 3);
    const BalanceOptions options;
    for (auto _ : state) benchmark::DoNotOptimize(normal_patch_retinex(slide.image, options));
}
BENCHMARK(BM_NormalPatchRetinex)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
