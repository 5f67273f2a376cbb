#pragma once

#include <cstddef>
#include <vector>

namespace lumifuse {

// Dense row-major raster, 1 (grayscale) or 3 (RGB) interleaved channels.
// Samples are normalized floats in [0,1]; construction through make_image
// and every library operation keep that invariant.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<float> data;

    float at(int x, int y, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    float& at(int x, int y, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    size_t sample_count() const { return data.size(); }
    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    bool operator==(const Image& o) const = default;
};

Image make_image(int width, int height, int channels, float fill = 0.0f);
Image make_image(int width, int height, int channels, std::vector<float> samples);

// Throws std::invalid_argument on bad dimensions, wrong data length,
// or any sample outside [0,1] / non-finite.
void validate_image(const Image& img);

// Unbounded double-precision working raster. Multi-scale transforms keep
// intermediate values here; signed and out-of-range samples are expected.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> data;

    double at(int x, int y, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double& at(int x, int y, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }

    size_t sample_count() const { return data.size(); }
    bool same_shape(const Raster& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

Raster make_raster(int width, int height, int channels, double fill = 0.0);
Raster to_raster(const Image& img);
Image to_image_clamped(const Raster& r);

// Rec.709 luminance for 3-channel input; 1-channel input is returned as is.
Image to_grayscale(const Image& img);

// 1-channel double plane of the image's intensity (identity for grayscale).
Raster luminance_plane(const Image& img);

Image extract_channel(const Image& img, int channel);
Image merge_channels(const std::vector<Image>& planes);

double rms_difference(const Raster& a, const Raster& b);
double rms_difference(const Image& a, const Image& b);

inline constexpr double kLumaR = 0.2126;
inline constexpr double kLumaG = 0.7152;
inline constexpr double kLumaB = 0.0722;

}  // namespace lumifuse
