#include "lumifuse/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lumifuse {

namespace {

void check_dims(int width, int height, int channels) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image dimensions must be >= 1, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    if (channels != 1 && channels != 3) {
        throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                    std::to_string(channels));
    }
}

}  // namespace

Image make_image(int width, int height, int channels, float fill) {
    check_dims(width, height, channels);
    if (!std::isfinite(fill) || fill < 0.0f || fill > 1.0f) {
        throw std::invalid_argument("fill value outside [0,1]");
    }
    Image img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.data.assign(static_cast<size_t>(width) * height * channels, fill);
    return img;
}

Image make_image(int width, int height, int channels, std::vector<float> samples) {
    Image img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.data = std::move(samples);
    validate_image(img);
    return img;
}

void validate_image(const Image& img) {
    check_dims(img.width, img.height, img.channels);
    const size_t expected =
        static_cast<size_t>(img.width) * img.height * img.channels;
    if (img.data.size() != expected) {
        throw std::invalid_argument("image data length " + std::to_string(img.data.size()) +
                                    " does not match dims (expected " +
                                    std::to_string(expected) + ")");
    }
    for (float v : img.data) {
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
            throw std::invalid_argument("image sample outside [0,1]: " + std::to_string(v));
        }
    }
}

Raster make_raster(int width, int height, int channels, double fill) {
    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    r.data.assign(static_cast<size_t>(width) * height * channels, fill);
    return r;
}

Raster to_raster(const Image& img) {
    Raster r;
    r.width = img.width;
    r.height = img.height;
    r.channels = img.channels;
    r.data.assign(img.data.begin(), img.data.end());
    return r;
}

Image to_image_clamped(const Raster& r) {
    Image img;
    img.width = r.width;
    img.height = r.height;
    img.channels = r.channels;
    img.data.resize(r.data.size());
    for (size_t i = 0; i < r.data.size(); ++i) {
        img.data[i] = static_cast<float>(std::clamp(r.data[i], 0.0, 1.0));
    }
    return img;
}

Image to_grayscale(const Image& img) {
    if (img.channels == 1) return img;
    Image out = make_image(img.width, img.height, 1);
    const size_t pixels = static_cast<size_t>(img.width) * img.height;
    for (size_t i = 0; i < pixels; ++i) {
        const double y = kLumaR * img.data[i * 3 + 0] + kLumaG * img.data[i * 3 + 1] +
                         kLumaB * img.data[i * 3 + 2];
        out.data[i] = static_cast<float>(std::clamp(y, 0.0, 1.0));
    }
    return out;
}

Raster luminance_plane(const Image& img) {
    Raster out = make_raster(img.width, img.height, 1);
    const size_t pixels = static_cast<size_t>(img.width) * img.height;
    if (img.channels == 1) {
        for (size_t i = 0; i < pixels; ++i) out.data[i] = img.data[i];
    } else {
        for (size_t i = 0; i < pixels; ++i) {
            out.data[i] = kLumaR * img.data[i * 3 + 0] + kLumaG * img.data[i * 3 + 1] +
                          kLumaB * img.data[i * 3 + 2];
        }
    }
    return out;
}

Image extract_channel(const Image& img, int channel) {
    if (channel < 0 || channel >= img.channels) {
        throw std::invalid_argument("channel index " + std::to_string(channel) +
                                    " out of range");
    }
    Image out = make_image(img.width, img.height, 1);
    const size_t pixels = static_cast<size_t>(img.width) * img.height;
    for (size_t i = 0; i < pixels; ++i) {
        out.data[i] = img.data[i * img.channels + channel];
    }
    return out;
}

Image merge_channels(const std::vector<Image>& planes) {
    if (planes.size() != 1 && planes.size() != 3) {
        throw std::invalid_argument("merge_channels expects 1 or 3 planes");
    }
    for (const Image& p : planes) {
        if (p.channels != 1 || !p.same_shape(planes.front())) {
            throw std::invalid_argument("merge_channels planes must be 1-channel, same size");
        }
    }
    if (planes.size() == 1) return planes.front();
    Image out = make_image(planes[0].width, planes[0].height, 3);
    const size_t pixels = static_cast<size_t>(out.width) * out.height;
    for (size_t i = 0; i < pixels; ++i) {
        out.data[i * 3 + 0] = planes[0].data[i];
        out.data[i * 3 + 1] = planes[1].data[i];
        out.data[i * 3 + 2] = planes[2].data[i];
    }
    return out;
}

double rms_difference(const Raster& a, const Raster& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("rms_difference: shape mismatch");
    }
    double sum = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.data.size()));
}

double rms_difference(const Image& a, const Image& b) {
    return rms_difference(to_raster(a), to_raster(b));
}

}  // namespace lumifuse
