#include "lumifuse/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace lumifuse {

double sharpness(const Image& img) {
    if (img.width < 2 || img.height < 2) {
        throw std::invalid_argument("sharpness: image must be at least 2x2");
    }
    const Raster plane = luminance_plane(img);
    double sum = 0.0;
    for (int y = 0; y < plane.height; ++y) {
        for (int x = 0; x < plane.width; ++x) {
            double gx;
            if (x == 0) {
                gx = plane.at(1, y) - plane.at(0, y);
            } else if (x == plane.width - 1) {
                gx = plane.at(x, y) - plane.at(x - 1, y);
            } else {
                gx = (plane.at(x + 1, y) - plane.at(x - 1, y)) * 0.5;
            }
            double gy;
            if (y == 0) {
                gy = plane.at(x, 1) - plane.at(x, 0);
            } else if (y == plane.height - 1) {
                gy = plane.at(x, y) - plane.at(x, y - 1);
            } else {
                gy = (plane.at(x, y + 1) - plane.at(x, y - 1)) * 0.5;
            }
            sum += std::sqrt(gx * gx + gy * gy);
        }
    }
    return sum / static_cast<double>(plane.sample_count());
}

double rms_contrast(const Image& img) {
    const Raster plane = luminance_plane(img);
    const double n = static_cast<double>(plane.sample_count());
    double mean = 0.0;
    for (double v : plane.data) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : plane.data) {
        const double d = v - mean;
        var += d * d;
    }
    return std::sqrt(var / n);
}

double background_difference(const Image& img, const Image& bg) {
    if (!img.same_shape(bg)) {
        throw std::invalid_argument("background_difference: dimensions differ");
    }
    const Raster a = luminance_plane(img);
    const Raster b = luminance_plane(bg);
    double sum = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        sum += std::abs(a.data[i] - b.data[i]);
    }
    return sum / static_cast<double>(a.data.size());
}

MetricReport evaluate(const Image& img, const Image& bg) {
    return MetricReport{sharpness(img), rms_contrast(img), background_difference(img, bg)};
}

}  // namespace lumifuse
