#pragma once

#include "slidewb/balance.hpp"
#include "slidewb/illuminant.hpp"
#include "slidewb/image.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slidewb {

/// Angle in degrees between the directions of two illuminants. The cosine is
/// clamped to [-1, 1] before arccos.
double angular_error(const Illuminant& estimate, const Illuminant& truth);

/// Slide families. Images that cannot be attributed are reported as Other.
enum class Series { HPS, CK34, KI67, Other };

std::string_view series_name(Series s) noexcept;
/// Case-insensitive; unknown labels map to Series::Other.
Series parse_series(std::string_view label) noexcept;

/// Reference illuminants per image id, with a fallback for ids not listed.
struct GroundTruth {
    std::map<std::string, Illuminant> per_image;
    Illuminant default_reference = Illuminant::neutral();

    const Illuminant& lookup(const std::string& image_id) const;

    /// Parses a JSON object mapping image filename -> [r, g, b].
    static GroundTruth from_json(std::string_view text);
    static GroundTruth load(const std::filesystem::path& path);
};

enum class StdDevKind { Population, Sample };

struct ReportRow {
    std::string image_id;
    Series series = Series::Other;
    std::string method;
    std::optional<double> angular_error_deg;  // empty when the run failed
    std::string error;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct SeriesAggregate {
    std::string method;
    Series series = Series::Other;
    std::size_t count = 0;
    double mean = 0.0;

    friend bool operator==(const SeriesAggregate&, const SeriesAggregate&) = default;
};

struct MethodAggregate {
    std::string method;
    std::size_t count = 0;
    std::size_t failures = 0;
    double mean = 0.0;
    double stddev = 0.0;

    friend bool operator==(const MethodAggregate&, const MethodAggregate&) = default;
};

struct AngularErrorReport {
    std::vector<ReportRow> rows;  // ordered by (image id, method)
    std::vector<SeriesAggregate> series_aggregates;
    std::vector<MethodAggregate> method_aggregates;
    StdDevKind stddev_kind = StdDevKind::Population;

    friend bool operator==(const AngularErrorReport&, const AngularErrorReport&) = default;
};

/// Mean and standard deviation of a sample (two-pass).
struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};
MeanStd mean_and_stddev(std::span<const double> values, StdDevKind kind);

/// Sorts rows and recomputes every aggregate from them. Failed rows count
/// toward MethodAggregate::failures only.
AngularErrorReport assemble_report(std::vector<ReportRow> rows, StdDevKind kind);

struct BatchImage {
    std::string id;
    Series series = Series::Other;
    ImageRGB image;
};

struct EvalOptions {
    std::size_t workers = 1;
    StdDevKind stddev_kind = StdDevKind::Population;
    double top_fraction = kDefaultTopFraction;
};

/// Receives each successful (image, method) correction. May be called
/// concurrently from worker threads, once per pair.
using CorrectedSink = std::function<void(const BatchImage&, const BalanceResult&)>;

/**
 * Runs every method on every image and scores what is left of the light
 * colour: the scene illuminant of each corrected image (the `original`
 * method's corrected image is the input itself) against the image's ground
 * truth. Per-image failures become rows carrying an error instead of
 * aborting the batch.
 */
AngularErrorReport evaluate_batch(std::span<const BatchImage> images,
                                  std::span<const std::string> methods, const GroundTruth& gt,
                                  const BalanceOptions& options, const EvalOptions& eval = {},
                                  const CorrectedSink& sink = {});

enum class ReportFormat { Csv, Json, Text };

ReportFormat parse_report_format(std::string_view name);
std::string report_to_table(const AngularErrorReport& report, ReportFormat format);
/// Inverse of the JSON rendering.
AngularErrorReport report_from_json(std::string_view text);

/// Fixed two-decimal rendering used in csv and text output.
std::string format_degrees(double value);

}  // namespace slidewb
