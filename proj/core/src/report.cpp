#include "slidewb/eval.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace slidewb {

namespace {

using nlohmann::json;

std::string_view stddev_name(StdDevKind k) {
    return k == StdDevKind::Population ? "population" : "sample";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string to_csv(const AngularErrorReport& report) {
    std::ostringstream out;
    out << "image,series,method,angular_error_deg\n";
    for (const auto& r : report.rows) {
        out << csv_field(r.image_id) << ',' << series_name(r.series) << ','
            << csv_field(r.method) << ','
            << (r.angular_error_deg ? format_degrees(*r.angular_error_deg) : "error") << '\n';
    }
    out << '\n' << "method,series,count,mean_deg,stddev_deg\n";
    for (const auto& a : report.series_aggregates) {
        out << csv_field(a.method) << ',' << series_name(a.series) << ',' << a.count << ','
            << format_degrees(a.mean) << ",\n";
    }
    for (const auto& a : report.method_aggregates) {
        out << csv_field(a.method) << ",all," << a.count << ',' << format_degrees(a.mean) << ','
            << format_degrees(a.stddev) << '\n';
    }
    return out.str();
}

json to_json(const AngularErrorReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row{{"image", r.image_id},
                 {"series", std::string(series_name(r.series))},
                 {"method", r.method}};
        row["angular_error_deg"] = r.angular_error_deg ? json(*r.angular_error_deg) : json(nullptr);
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    json series = json::array();
    for (const auto& a : report.series_aggregates) {
        series.push_back({{"method", a.method},
                          {"series", std::string(series_name(a.series))},
                          {"count", a.count},
                          {"mean_deg", a.mean}});
    }
    json methods = json::array();
    for (const auto& a : report.method_aggregates) {
        methods.push_back({{"method", a.method},
                           {"count", a.count},
                           {"failures", a.failures},
                           {"mean_deg", a.mean},
                           {"stddev_deg", a.stddev}});
    }
    return json{{"stddev", std::string(stddev_name(report.stddev_kind))},
                {"rows", std::move(rows)},
                {"series_aggregates", std::move(series)},
                {"method_aggregates", std::move(methods)}};
}

std::string to_text(const AngularErrorReport& report) {
    const std::string h_method = "Method";
    const std::string h_err = "Angular Error";
    const std::string h_std = "Standard deviation";
    std::size_t w_method = h_method.size();
    for (const auto& a : report.method_aggregates) w_method = std::max(w_method, a.method.size());

    std::ostringstream out;
    out << pad_right(h_method, w_method) << " | " << h_err << " | " << h_std << '\n';
    out << std::string(w_method, '-') << "-+-" << std::string(h_err.size(), '-') << "-+-"
        << std::string(h_std.size(), '-') << '\n';
    for (const auto& a : report.method_aggregates) {
        out << pad_right(a.method, w_method) << " | " << pad_left(format_degrees(a.mean), h_err.size())
            << " | " << pad_left(format_degrees(a.stddev), h_std.size()) << '\n';
    }
    if (report.series_aggregates.empty()) return out.str();

    // per-series means, one column per series present
    std::set<Series> present;
    for (const auto& a : report.series_aggregates) present.insert(a.series);
    out << '\n' << pad_right(h_method, w_method);
    for (Series s : present) out << " | " << pad_left(std::string(series_name(s)), 6);
    out << '\n' << std::string(w_method, '-');
    for (std::size_t i = 0; i < present.size(); ++i) out << "-+-" << std::string(6, '-');
    out << '\n';
    for (const auto& m : report.method_aggregates) {
        out << pad_right(m.method, w_method);
        for (Series s : present) {
            auto it = std::find_if(report.series_aggregates.begin(), report.series_aggregates.end(),
                                   [&](const SeriesAggregate& a) {
                                       return a.method == m.method && a.series == s;
                                   });
            out << " | "
                << pad_left(it == report.series_aggregates.end() ? "-" : format_degrees(it->mean), 6);
        }
        out << '\n';
    }

    bool header = false;
    for (const auto& r : report.rows) {
        if (r.angular_error_deg) continue;
        if (!header) {
            out << "\nFailures:\n";
            header = true;
        }
        out << "  " << r.image_id << " [" << r.method << "]: " << r.error << '\n';
    }
    return out.str();
}

}  // namespace

std::string format_degrees(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    if (name == "text") return ReportFormat::Text;
    throw std::invalid_argument("unknown report format '" + std::string(name) +
                                "' (expected csv, json or text)");
}

std::string report_to_table(const AngularErrorReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: return to_csv(report);
        case ReportFormat::Json: return to_json(report).dump(2) + "\n";
        case ReportFormat::Text: return to_text(report);
    }
    return {};
}

AngularErrorReport report_from_json(std::string_view text) {
    const json doc = json::parse(text);
    AngularErrorReport report;
    const std::string kind = doc.at("stddev").get<std::string>();
    if (kind == "population") {
        report.stddev_kind = StdDevKind::Population;
    } else if (kind == "sample") {
        report.stddev_kind = StdDevKind::Sample;
    } else {
        throw std::invalid_argument("unknown stddev kind '" + kind + "'");
    }
    for (const auto& r : doc.at("rows")) {
        ReportRow row;
        row.image_id = r.at("image").get<std::string>();
        row.series = parse_series(r.at("series").get<std::string>());
        row.method = r.at("method").get<std::string>();
        if (!r.at("angular_error_deg").is_null()) {
            row.angular_error_deg = r.at("angular_error_deg").get<double>();
        }
        if (r.contains("error")) row.error = r.at("error").get<std::string>();
        report.rows.push_back(std::move(row));
    }
    for (const auto& a : doc.at("series_aggregates")) {
        report.series_aggregates.push_back({a.at("method").get<std::string>(),
                                            parse_series(a.at("series").get<std::string>()),
                                            a.at("count").get<std::size_t>(),
                                            a.at("mean_deg").get<double>()});
    }
    for (const auto& a : doc.at("method_aggregates")) {
        report.method_aggregates.push_back(
            {a.at("method").get<std::string>(), a.at("count").get<std::size_t>(),
             a.at("failures").get<std::size_t>(), a.at("mean_deg").get<double>(),
             a.at("stddev_deg").get<double>()});
    }
    return report;
}

}  // namespace slidewb
