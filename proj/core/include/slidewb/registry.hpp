#pragma once

#include "slidewb/balance.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slidewb {

using BalanceOperator = std::function<BalanceResult(const ImageRGB&, const BalanceOptions&)>;

namespace methods {
inline constexpr std::string_view kOriginal = "original";
inline constexpr std::string_view kHistogramNormalisation = "histogram_normalisation";
inline constexpr std::string_view kGrayWorld = "gray_world";
inline constexpr std::string_view kWhitePatchRetinex = "white_patch_retinex";
inline constexpr std::string_view kNormalPatchRetinex = "normal_patch_retinex";
}  // namespace methods

/// Immutable name -> operator catalog. Iteration follows registration order.
class MethodRegistry {
public:
    /// The five built-in methods plus the reserved, unimplemented names.
    static const MethodRegistry& builtin();

    MethodRegistry() = default;
    void add(std::string name, BalanceOperator op);
    void reserve_name(std::string name);

    bool contains(std::string_view name) const;
    bool is_reserved(std::string_view name) const;
    const std::vector<std::string>& names() const noexcept { return order_; }

    /// Throws UnknownMethodError (listing the registered names) or
    /// NotImplementedError for reserved names.
    BalanceResult run(std::string_view name, const ImageRGB& img,
                      const BalanceOptions& options) const;

private:
    std::vector<std::string> order_;
    std::map<std::string, BalanceOperator, std::less<>> ops_;
    std::vector<std::string> reserved_;
};

BalanceResult registry_run(std::string_view name, const ImageRGB& img,
                           const BalanceOptions& options);
BalanceResult registry_run(std::string_view name, const ImageRGB& img,
                           const RetinexParams& params);

}  // namespace slidewb
