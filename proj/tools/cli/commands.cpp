#include "commands.hpp"

#include "slidewb/error.hpp"
#include "slidewb/image_io.hpp"
#include "slidewb/parallel.hpp"
#include "slidewb/registry.hpp"
#include "slidewb/retinex.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace slidewb::cli {

namespace fs = std::filesystem;

namespace {

std::string triple(double a, double b, double c) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(4);
    s << '(' << a << ", " << b << ", " << c << ')';
    return s.str();
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw ImageIoError("cannot create output directory '" + dir.string() + "': " +
                           ec.message());
    }
}

int finish(const std::vector<std::string>& failures, std::ostream& err) {
    if (failures.empty()) return 0;
    err << failures.size() << " image(s) failed:\n";
    for (const auto& f : failures) err << "  " << f << '\n';
    return 1;
}

}  // namespace

std::vector<fs::path> expand_inputs(const std::vector<fs::path>& inputs) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        std::error_code ec;
        if (fs::is_directory(in, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::recursive_directory_iterator(in, ec)) {
                if (entry.is_regular_file() && is_supported_image_path(entry.path())) {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

fs::path output_path(const fs::path& out_dir, const fs::path& input, const std::string& tag) {
    return out_dir / (input.stem().string() + "." + tag + input.extension().string());
}

int cmd_correct(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto files = expand_inputs(config.inputs);
    ensure_out_dir(config.out_dir);

    struct Outcome {
        std::vector<std::string> lines;
        std::vector<std::string> failures;
    };
    std::vector<Outcome> outcomes(files.size());
    parallel_for(files.size(), config.workers, [&](std::size_t i) {
        Outcome& o = outcomes[i];
        std::optional<LoadedImage> loaded;
        try {
            loaded = load_image_with_info(files[i]);
        } catch (const std::exception& e) {
            o.failures.push_back(files[i].string() + ": " + e.what());
            return;
        }
        for (const auto& w : loaded->warnings) o.lines.push_back("warning: " + w);
        for (const auto& method : config.methods) {
            try {
                const BalanceResult r = registry_run(method, loaded->image, config.options);
                const fs::path dst = output_path(config.out_dir, files[i], method);
                save_image(r.corrected, dst, loaded->depth);
                const auto& e = r.estimated_illuminant;
                o.lines.push_back(files[i].filename().string() + " [" + method + "] illuminant " +
                                  triple(e.r(), e.g(), e.b()) + " gains " +
                                  triple(r.gains.r, r.gains.g, r.gains.b) + " -> " + dst.string());
            } catch (const std::exception& e) {
                o.failures.push_back(files[i].string() + " [" + method + "]: " + e.what());
            }
        }
    });

    std::vector<std::string> failures;
    for (const auto& o : outcomes) {
        for (const auto& line : o.lines) out << line << '\n';
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
    return finish(failures, err);
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto files = expand_inputs(config.inputs);
    if (config.write_images) ensure_out_dir(config.out_dir);

    GroundTruth gt;
    if (config.ground_truth) gt = GroundTruth::load(*config.ground_truth);

    std::vector<std::optional<LoadedImage>> loaded(files.size());
    std::vector<std::string> load_errors(files.size());
    parallel_for(files.size(), config.workers, [&](std::size_t i) {
        try {
            loaded[i] = load_image_with_info(files[i]);
        } catch (const std::exception& e) {
            load_errors[i] = files[i].string() + ": " + e.what();
        }
    });

    std::vector<std::string> failures;
    std::vector<BatchImage> batch;
    std::vector<fs::path> batch_paths;
    std::vector<BitDepth> depths;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!loaded[i]) {
            failures.push_back(load_errors[i]);
            continue;
        }
        for (const auto& w : loaded[i]->warnings) err << "warning: " << w << '\n';
        batch.push_back({files[i].filename().string(),
                         parse_series(files[i].parent_path().filename().string()),
                         loaded[i]->image});
        batch_paths.push_back(files[i]);
        depths.push_back(loaded[i]->depth);
        loaded[i].reset();
    }

    CorrectedSink sink;
    if (config.write_images) {
        sink = [&](const BatchImage& item, const BalanceResult& r) {
            const auto idx = static_cast<std::size_t>(&item - batch.data());
            save_image(r.corrected, output_path(config.out_dir, batch_paths[idx], r.method_name),
                       depths[idx]);
        };
    }

    EvalOptions eval;
    eval.workers = config.workers;
    eval.stddev_kind = config.stddev;
    const AngularErrorReport report =
        evaluate_batch(batch, config.methods, gt, config.options, eval, sink);

    const std::string rendered = report_to_table(report, config.format);
    if (config.report_path) {
        std::ofstream f(*config.report_path, std::ios::binary);
        if (!f) {
            err << "cannot write report '" << config.report_path->string() << "'\n";
            return 1;
        }
        f << rendered;
    } else {
        out << rendered;
    }

    for (const auto& row : report.rows) {
        if (!row.angular_error_deg) failures.push_back(row.image_id + " [" + row.method + "]: " + row.error);
    }
    return finish(failures, err);
}

int cmd_retinex(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto files = expand_inputs(config.inputs);
    ensure_out_dir(config.out_dir);
    const std::string tag = std::string(config.use_msr ? "msr" : "ssr") + (config.gray ? "-gray" : "");

    std::vector<std::string> lines(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), config.workers, [&](std::size_t i) {
        try {
            const LoadedImage loaded = load_image_with_info(files[i]);
            auto run_one = [&](const ImageGray& plane) {
                const LightnessMap map = config.use_msr ? msr(plane, config.options.retinex)
                                                        : ssr(plane, config.options.retinex);
                return lightness_to_image(map);
            };
            ImageRGB result = [&] {
                if (config.gray) return gray_to_rgb(run_one(to_gray(loaded.image)));
                std::array<ImageGray, 3> planes{run_one(channel_image(loaded.image, 0)),
                                                run_one(channel_image(loaded.image, 1)),
                                                run_one(channel_image(loaded.image, 2))};
                std::vector<Rgb> data(loaded.image.size());
                for (std::size_t k = 0; k < data.size(); ++k) {
                    data[k] = {planes[0].values()[k], planes[1].values()[k], planes[2].values()[k]};
                }
                return ImageRGB(loaded.image.width(), loaded.image.height(), std::move(data));
            }();
            const fs::path dst = output_path(config.out_dir, files[i], tag);
            save_image(result, dst, loaded.depth);
            lines[i] = files[i].filename().string() + " -> " + dst.string();
        } catch (const std::exception& e) {
            errors[i] = files[i].string() + ": " + e.what();
        }
    });

    std::vector<std::string> failures;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (!lines[i].empty()) out << lines[i] << '\n';
        if (!errors[i].empty()) failures.push_back(errors[i]);
    }
    return finish(failures, err);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Correct: return cmd_correct(config, out, err);
            case Command::Compare: return cmd_compare(config, out, err);
            case Command::Retinex: return cmd_retinex(config, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace slidewb::cli
