#include "slidewb/eval.hpp"

#include "slidewb/parallel.hpp"
#include "slidewb/registry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace slidewb {

double angular_error(const Illuminant& estimate, const Illuminant& truth) {
    const auto a = estimate.unit_direction();
    const auto b = truth.unit_direction();
    const double dot = std::clamp(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], -1.0, 1.0);
    return std::acos(dot) * 180.0 / std::numbers::pi;
}

std::string_view series_name(Series s) noexcept {
    switch (s) {
        case Series::HPS: return "HPS";
        case Series::CK34: return "CK34";
        case Series::KI67: return "KI67";
        case Series::Other: break;
    }
    return "other";
}

Series parse_series(std::string_view label) noexcept {
    std::string up(label);
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "HPS") return Series::HPS;
    if (up == "CK34") return Series::CK34;
    if (up == "KI67") return Series::KI67;
    return Series::Other;
}

const Illuminant& GroundTruth::lookup(const std::string& image_id) const {
    if (auto it = per_image.find(image_id); it != per_image.end()) return it->second;
    return default_reference;
}

GroundTruth GroundTruth::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("ground truth is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("ground truth must be a JSON object of filename -> [r,g,b]");
    }
    GroundTruth gt;
    for (const auto& [name, value] : doc.items()) {
        if (!value.is_array() || value.size() != 3 ||
            !std::all_of(value.begin(), value.end(), [](const auto& v) { return v.is_number(); })) {
            throw std::invalid_argument("ground truth entry '" + name +
                                        "' must be an array of three numbers");
        }
        gt.per_image.emplace(name, Illuminant(value[0].get<double>(), value[1].get<double>(),
                                              value[2].get<double>()));
    }
    return gt;
}

GroundTruth GroundTruth::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read ground truth '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

MeanStd mean_and_stddev(std::span<const double> values, StdDevKind kind) {
    if (values.empty()) return {};
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double denom = kind == StdDevKind::Population ? n : n - 1.0;
    return {mean, denom > 0.0 ? std::sqrt(ss / denom) : 0.0};
}

AngularErrorReport assemble_report(std::vector<ReportRow> rows, StdDevKind kind) {
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        if (a.image_id != b.image_id) return a.image_id < b.image_id;
        return a.method < b.method;
    });

    // methods in first-appearance order of the sorted rows would depend on ids;
    // order them by name instead
    std::vector<std::string> methods;
    for (const auto& r : rows) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
            methods.push_back(r.method);
        }
    }
    std::sort(methods.begin(), methods.end());

    AngularErrorReport report;
    report.stddev_kind = kind;
    for (const auto& m : methods) {
        std::vector<double> all;
        std::size_t failures = 0;
        std::map<Series, std::vector<double>> by_series;
        for (const auto& r : rows) {
            if (r.method != m) continue;
            if (!r.angular_error_deg) {
                ++failures;
                continue;
            }
            all.push_back(*r.angular_error_deg);
            by_series[r.series].push_back(*r.angular_error_deg);
        }
        for (const auto& [series, values] : by_series) {
            report.series_aggregates.push_back(
                {m, series, values.size(), mean_and_stddev(values, kind).mean});
        }
        const MeanStd ms = mean_and_stddev(all, kind);
        report.method_aggregates.push_back({m, all.size(), failures, ms.mean, ms.stddev});
    }
    report.rows = std::move(rows);
    return report;
}

AngularErrorReport evaluate_batch(std::span<const BatchImage> images,
                                  std::span<const std::string> methods, const GroundTruth& gt,
                                  const BalanceOptions& options, const EvalOptions& eval,
                                  const CorrectedSink& sink) {
    const std::size_t n_methods = methods.size();
    std::vector<ReportRow> rows(images.size() * n_methods);
    const MethodRegistry& registry = MethodRegistry::builtin();

    parallel_for(rows.size(), eval.workers, [&](std::size_t task) {
        const BatchImage& item = images[task / n_methods];
        const std::string& method = methods[task % n_methods];
        ReportRow& row = rows[task];
        row.image_id = item.id;
        row.series = item.series;
        row.method = method;
        try {
            const BalanceResult result = registry.run(method, item.image, options);
            const Illuminant residual = estimate_scene_illuminant(result.corrected, eval.top_fraction);
            row.angular_error_deg = angular_error(residual, gt.lookup(item.id));
            if (sink) sink(item, result);
        } catch (const std::exception& e) {
            row.angular_error_deg.reset();
            row.error = e.what();
        }
    });
    return assemble_report(std::move(rows), eval.stddev_kind);
}

}  // namespace slidewb
