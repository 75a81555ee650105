#include "slidewb/image.hpp"

#include "synthetic_slide.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace slidewb;

TEST(ImageRGB, RejectsBadShapeAndValues) {
    EXPECT_THROW(ImageRGB(0, 1, Rgb{}), std::invalid_argument);
    EXPECT_THROW(ImageRGB(2, 2, std::vector<Rgb>(3)), std::invalid_argument);
    EXPECT_THROW(ImageRGB(1, 1, Rgb{1.5, 0, 0}), std::invalid_argument);
    EXPECT_THROW(ImageRGB(1, 1, Rgb{-0.1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(ImageRGB(1, 1, Rgb{std::numeric_limits<double>::quiet_NaN(), 0, 0}),
                 std::invalid_argument);
    EXPECT_THROW(ImageGray(1, 1, 2.0), std::invalid_argument);
    EXPECT_NO_THROW(ImageRGB(1, 1, Rgb{1, 0, 0.5}));
}

TEST(ImageRGB, MakeClampedClips) {
    const ImageRGB img = make_clamped(2, 1, {{1.2, -0.5, 0.3}, {0.0, 1.0, 7.0}});
    EXPECT_EQ(img.at(0, 0), (Rgb{1.0, 0.0, 0.3}));
    EXPECT_EQ(img.at(1, 0), (Rgb{0.0, 1.0, 1.0}));
    EXPECT_THROW(make_clamped(1, 1, {{std::numeric_limits<double>::infinity(), 0, 0}}),
                 std::invalid_argument);
}

TEST(ToGray, Examples) {
    EXPECT_DOUBLE_EQ(to_gray(ImageRGB(1, 1, Rgb{1, 1, 1})).at(0, 0), 1.0);
    EXPECT_EQ(to_gray(ImageRGB(1, 1, Rgb{0, 0, 0})).at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(to_gray(ImageRGB(1, 1, Rgb{1, 0, 0})).at(0, 0), 0.299);
}

TEST(HsvValue, Examples) {
    EXPECT_EQ(rgb_to_hsv_value(ImageRGB(1, 1, Rgb{0.2, 0.9, 0.1})).at(0, 0), 0.9);
    EXPECT_EQ(rgb_to_hsv_value(ImageRGB(1, 1, Rgb{0, 0, 0})).at(0, 0), 0.0);
    EXPECT_EQ(rgb_to_hsv_value(ImageRGB(1, 1, Rgb{0.5, 0.5, 0.5})).at(0, 0), 0.5);
}

TEST(ToGray, ScalesLinearlyAndStaysBelowValue) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const ImageRGB img = synth::random_image(4, 3, rng);
        const double k = synth::uniform(rng, 0.0, 1.0);
        std::vector<Rgb> scaled(img.pixels().begin(), img.pixels().end());
        for (Rgb& p : scaled) p = {p.r * k, p.g * k, p.b * k};
        const ImageGray g = to_gray(img);
        const ImageGray gs = to_gray(ImageRGB(4, 3, scaled));
        const ImageGray v = rgb_to_hsv_value(img);
        for (std::size_t i = 0; i < g.size(); ++i) {
            EXPECT_NEAR(gs.values()[i], k * g.values()[i], 1e-15);
            EXPECT_GE(v.values()[i], g.values()[i]);
        }
    }
}

TEST(ChannelImage, ExtractsAndReplicates) {
    const ImageRGB img(2, 1, std::vector<Rgb>{{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
    const ImageGray g = channel_image(img, 1);
    EXPECT_EQ(g.at(0, 0), 0.2);
    EXPECT_EQ(g.at(1, 0), 0.5);
    const ImageRGB back = gray_to_rgb(g);
    EXPECT_EQ(back.at(1, 0), (Rgb{0.5, 0.5, 0.5}));
}
