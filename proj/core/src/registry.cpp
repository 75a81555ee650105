#include "slidewb/registry.hpp"

#include "slidewb/error.hpp"

#include <algorithm>

namespace slidewb {

void MethodRegistry::add(std::string name, BalanceOperator op) {
    if (ops_.contains(name)) {
        throw std::invalid_argument("method '" + name + "' registered twice");
    }
    order_.push_back(name);
    ops_.emplace(std::move(name), std::move(op));
}

void MethodRegistry::reserve_name(std::string name) { reserved_.push_back(std::move(name)); }

bool MethodRegistry::contains(std::string_view name) const { return ops_.find(name) != ops_.end(); }

bool MethodRegistry::is_reserved(std::string_view name) const {
    return std::find(reserved_.begin(), reserved_.end(), name) != reserved_.end();
}

BalanceResult MethodRegistry::run(std::string_view name, const ImageRGB& img,
                                  const BalanceOptions& options) const {
    if (auto it = ops_.find(name); it != ops_.end()) {
        return it->second(img, options);
    }
    if (is_reserved(name)) {
        throw NotImplementedError("method '" + std::string(name) + "' is not implemented");
    }
    std::string known;
    for (const auto& n : order_) {
        if (!known.empty()) known += ", ";
        known += n;
    }
    throw UnknownMethodError("unknown method '" + std::string(name) + "'; available: " + known);
}

const MethodRegistry& MethodRegistry::builtin() {
    static const MethodRegistry registry = [] {
        MethodRegistry r;
        r.add(std::string(methods::kOriginal), [](const ImageRGB& img, const BalanceOptions&) {
            return BalanceResult{img, estimate_scene_illuminant(img),
                                 std::string(methods::kOriginal), Gains{}, {}};
        });
        r.add(std::string(methods::kHistogramNormalisation),
              [](const ImageRGB& img, const BalanceOptions& o) {
                  return histogram_normalisation(img, o.stretch_low, o.stretch_high);
              });
        r.add(std::string(methods::kGrayWorld),
              [](const ImageRGB& img, const BalanceOptions&) { return gray_world(img); });
        r.add(std::string(methods::kWhitePatchRetinex),
              [](const ImageRGB& img, const BalanceOptions& o) {
                  return white_patch_retinex(img, o.retinex);
              });
        r.add(std::string(methods::kNormalPatchRetinex),
              [](const ImageRGB& img, const BalanceOptions& o) {
                  return normal_patch_retinex(img, o);
              });
        for (const char* reserved :
             {"mean_shift_gray_pixel", "cheng_pca", "all_gray_pixels", "yuv_gray_pixels"}) {
            r.reserve_name(reserved);
        }
        return r;
    }();
    return registry;
}

BalanceResult registry_run(std::string_view name, const ImageRGB& img,
                           const BalanceOptions& options) {
    return MethodRegistry::builtin().run(name, img, options);
}

BalanceResult registry_run(std::string_view name, const ImageRGB& img,
                           const RetinexParams& params) {
    BalanceOptions options;
    options.retinex = params;
    return registry_run(name, img, options);
}

}  // namespace slidewb
