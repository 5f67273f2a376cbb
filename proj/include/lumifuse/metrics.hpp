#pragma once

#include "lumifuse/image.hpp"

namespace lumifuse {

struct MetricReport {
    double sharpness = 0.0;
    double rms_contrast = 0.0;
    double background_difference = 0.0;
};

// Mean gradient magnitude over the luminance plane. Central differences on
// the interior, one-sided at the borders. Requires width and height >= 2.
double sharpness(const Image& img);

// Standard deviation of the luminance plane.
double rms_contrast(const Image& img);

// Mean absolute luminance deviation between image and background.
double background_difference(const Image& img, const Image& bg);

MetricReport evaluate(const Image& img, const Image& bg);

}  // namespace lumifuse
