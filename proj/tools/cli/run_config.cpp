#include "run_config.hpp"

#include "slidewb/error.hpp"
#include "slidewb/registry.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <sstream>

namespace slidewb::cli {

namespace {

double parse_number(std::string_view token, std::string_view what) {
    double v = 0.0;
    const auto* begin = token.data();
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || token.empty()) {
        throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(token) + "'");
    }
    return v;
}

std::vector<std::string> split_methods(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!name.empty()) out.push_back(name);
        }
    }
    return out;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

std::vector<ScaleWeight> parse_msr_scales(std::string_view text) {
    std::vector<ScaleWeight> scales;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("expected sigma:weight, got '" + std::string(item) + "'");
        }
        const double sigma = parse_number(item.substr(0, colon), "sigma");
        const double weight = parse_number(item.substr(colon + 1), "weight");
        if (!(sigma > 0.0)) throw std::invalid_argument("scale sigma must be positive");
        if (!(weight >= 0.0)) throw std::invalid_argument("scale weight must be non-negative");
        scales.push_back({sigma, weight});
        pos = comma + 1;
    }
    double total = 0.0;
    for (const auto& s : scales) total += s.weight;
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("scale weights sum to " + std::to_string(total) + ", not 1");
    }
    return scales;
}

ParseOutcome parse_command_line(int argc, const char* const* argv) {
    CLI::App app{"White balance and retinex tools for transmitted-light microscopy images",
                 "slidewb"};
    app.set_config("--config", "", "TOML/INI file with option defaults");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> methods;
    std::string format = "text";
    std::string kernel = "gaussian";
    std::string stddev = "population";
    std::string msr_scales;
    std::string out_dir = ".";
    std::string gt;
    std::string report;
    RetinexParams& rp = cfg.options.retinex;

    app.add_option("--method", methods, "Balance method(s); repeat or comma-separate");
    app.add_option("--sigma", rp.sigma, "Gaussian surround scale in pixels")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--threshold", rp.threshold, "Path-retinex contrast threshold t")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--paths", rp.num_paths, "Random paths per pixel for path retinex")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--path-length", rp.path_length, "Steps per random path")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--seed", rp.rng_seed, "Seed for the path sampler")->capture_default_str();
    app.add_option("--epsilon", rp.epsilon, "Log stabilizer")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--kernel", kernel, "Surround kernel")
        ->check(CLI::IsMember({"gaussian", "cross"}))->capture_default_str();
    app.add_option("--cross-radius", rp.cross_radius, "Cross-average window radius")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--msr-scales", msr_scales, "Multi-scale retinex scales, sigma:weight,...");
    app.add_option("--stretch-low", cfg.options.stretch_low, "Lower stretch percentile (0-1)")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--stretch-high", cfg.options.stretch_high, "Upper stretch percentile (0-1)")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--reference-fraction", cfg.options.reference_fraction,
                   "Share of brightest pixels used as white reference by normal_patch_retinex")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--gt", gt, "Ground-truth JSON sidecar (filename -> [r,g,b])");
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "json", "text"}))->capture_default_str();
    app.add_option("--report", report, "Write the report here instead of stdout");
    app.add_option("--stddev", stddev, "Standard deviation convention")
        ->check(CLI::IsMember({"population", "sample"}))->capture_default_str();
    app.add_option("--workers", cfg.workers, "Worker threads")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}))->capture_default_str();
    app.add_option("--out-dir", out_dir, "Directory for written images")->capture_default_str();

    std::vector<std::string> inputs;
    auto* correct = app.add_subcommand("correct", "White-balance images");
    correct->add_option("inputs", inputs, "Image files or directories")->required();
    correct->fallthrough();

    auto* compare = app.add_subcommand("compare", "Score methods by angular error");
    compare->add_option("inputs", inputs, "Image files or directories")->required();
    compare->add_flag("--write-images", cfg.write_images, "Also save every corrected variant");
    compare->fallthrough();

    auto* retinex = app.add_subcommand("retinex", "Write SSR/MSR lightness maps");
    retinex->add_option("inputs", inputs, "Image files or directories")->required();
    retinex->add_flag("--gray", cfg.gray, "Process the grayscale image instead of each channel");
    retinex->fallthrough();

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        outcome.output = app.help();
        return outcome;
    } catch (const CLI::CallForAllHelp&) {
        outcome.output = app.help("", CLI::AppFormatMode::All);
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.exit_code = 2;
        outcome.output = first_line(e.what());
        return outcome;
    }

    auto reject = [&](const std::string& flag, const std::string& why) {
        outcome.exit_code = 2;
        outcome.output = flag + ": " + first_line(why);
        return outcome;
    };

    if (correct->parsed()) cfg.command = Command::Correct;
    if (compare->parsed()) cfg.command = Command::Compare;
    if (retinex->parsed()) cfg.command = Command::Retinex;

    for (const auto& in : inputs) cfg.inputs.emplace_back(in);
    cfg.out_dir = out_dir;
    if (!gt.empty()) cfg.ground_truth = gt;
    if (!report.empty()) cfg.report_path = report;
    cfg.format = parse_report_format(format);
    cfg.stddev = stddev == "sample" ? StdDevKind::Sample : StdDevKind::Population;
    rp.kernel = kernel == "cross" ? SurroundKind::CrossAverage : SurroundKind::Gaussian;

    if (!msr_scales.empty()) {
        try {
            rp.msr_scales = parse_msr_scales(msr_scales);
        } catch (const std::invalid_argument& e) {
            return reject("--msr-scales", e.what());
        }
        cfg.use_msr = true;
    }

    cfg.methods = split_methods(methods);
    if (cfg.methods.empty()) {
        if (cfg.command == Command::Compare) {
            cfg.methods = MethodRegistry::builtin().names();
        } else {
            cfg.methods = {std::string(methods::kNormalPatchRetinex)};
        }
    }
    const MethodRegistry& registry = MethodRegistry::builtin();
    for (const auto& m : cfg.methods) {
        if (registry.is_reserved(m)) {
            return reject("--method", "method '" + m + "' is not implemented");
        }
        if (!registry.contains(m)) {
            std::string known;
            for (const auto& n : registry.names()) known += (known.empty() ? "" : ", ") + n;
            return reject("--method", "unknown method '" + m + "'; available: " + known);
        }
    }

    try {
        cfg.options.validate();
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const std::string flag = what.find("stretch") != std::string::npos ? "--stretch-low/--stretch-high"
                                 : what.find("reference") != std::string::npos ? "--reference-fraction"
                                 : what.find("msr") != std::string::npos ? "--msr-scales"
                                 : "--config";
        return reject(flag, what);
    }

    outcome.config = std::move(cfg);
    return outcome;
}

}  // namespace slidewb::cli
