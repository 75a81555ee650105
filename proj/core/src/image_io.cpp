#include "slidewb/image_io.hpp"

#include "slidewb/error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace slidewb {

namespace {

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return ext;
}

double max_code(BitDepth depth) { return depth == BitDepth::Eight ? 255.0 : 65535.0; }

template <typename T>
std::vector<Rgb> unpack(const cv::Mat& m, double scale) {
    const int channels = m.channels();
    std::vector<Rgb> out(static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols));
    std::size_t i = 0;
    for (int y = 0; y < m.rows; ++y) {
        const T* row = m.ptr<T>(y);
        for (int x = 0; x < m.cols; ++x, ++i) {
            const T* px = row + static_cast<std::ptrdiff_t>(x) * channels;
            if (channels == 1) {
                const double v = px[0] / scale;
                out[i] = {v, v, v};
            } else {
                // OpenCV stores BGR(A)
                out[i] = {px[2] / scale, px[1] / scale, px[0] / scale};
            }
        }
    }
    return out;
}

}  // namespace

unsigned quantize(double v, BitDepth depth) noexcept {
    const double scaled = clamp_unit(v) * max_code(depth);
    return static_cast<unsigned>(std::floor(scaled + 0.5));
}

bool is_supported_image_path(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".tif" || ext == ".tiff";
}

LoadedImage load_image_with_info(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw ImageIoError("cannot read '" + path.string() + "': not a readable file");
    }
    cv::Mat m;
    try {
        m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        throw ImageIoError("cannot decode '" + path.string() + "': " + e.what());
    }
    if (m.empty()) {
        throw ImageIoError("cannot decode '" + path.string() + "'");
    }
    if (m.rows <= 0 || m.cols <= 0) {
        throw ImageIoError("'" + path.string() + "' has zero dimensions");
    }

    BitDepth depth;
    switch (m.depth()) {
        case CV_8U: depth = BitDepth::Eight; break;
        case CV_16U: depth = BitDepth::Sixteen; break;
        default:
            throw ImageIoError("'" + path.string() + "' has an unsupported bit depth");
    }

    std::vector<std::string> warnings;
    const int channels = m.channels();
    if (channels == 4) {
        std::vector<cv::Mat> planes;
        cv::split(m, planes);
        planes.pop_back();
        cv::merge(planes, m);
        warnings.emplace_back("alpha channel dropped from '" + path.string() + "'");
    } else if (channels != 1 && channels != 3) {
        throw ImageIoError("'" + path.string() + "' has unsupported channel count " +
                           std::to_string(channels));
    }

    const double scale = max_code(depth);
    std::vector<Rgb> data = depth == BitDepth::Eight ? unpack<std::uint8_t>(m, scale)
                                                     : unpack<std::uint16_t>(m, scale);
    return LoadedImage{
        ImageRGB(static_cast<std::size_t>(m.cols), static_cast<std::size_t>(m.rows),
                 std::move(data)),
        depth, static_cast<std::size_t>(channels == 1 ? 1 : 3), std::move(warnings)};
}

ImageRGB load_image(const std::filesystem::path& path) {
    return load_image_with_info(path).image;
}

void save_image(const ImageRGB& img, const std::filesystem::path& path, BitDepth depth) {
    if (!is_supported_image_path(path)) {
        throw ImageIoError("unsupported output format for '" + path.string() +
                           "' (use .png, .tif or .tiff)");
    }
    const int rows = static_cast<int>(img.height());
    const int cols = static_cast<int>(img.width());
    cv::Mat m(rows, cols, depth == BitDepth::Eight ? CV_8UC3 : CV_16UC3);
    auto px = img.pixels();
    std::size_t i = 0;
    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < cols; ++x, ++i) {
            const unsigned r = quantize(px[i].r, depth);
            const unsigned g = quantize(px[i].g, depth);
            const unsigned b = quantize(px[i].b, depth);
            if (depth == BitDepth::Eight) {
                m.at<cv::Vec3b>(y, x) = cv::Vec3b(static_cast<std::uint8_t>(b),
                                                  static_cast<std::uint8_t>(g),
                                                  static_cast<std::uint8_t>(r));
            } else {
                m.at<cv::Vec3w>(y, x) = cv::Vec3w(static_cast<std::uint16_t>(b),
                                                  static_cast<std::uint16_t>(g),
                                                  static_cast<std::uint16_t>(r));
            }
        }
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), m);
    } catch (const cv::Exception& e) {
        throw ImageIoError("cannot write '" + path.string() + "': " + e.what());
    }
    if (!ok) {
        throw ImageIoError("cannot write '" + path.string() + "'");
    }
}

}  // namespace slidewb
