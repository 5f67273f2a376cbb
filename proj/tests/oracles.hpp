#pragma once

// Straight-line reference implementations used only by tests. These follow
// the operation definitions directly (full 2-D convolutions, per-pixel
// block formulas, two-pass statistics) instead of the library's separable
// or incremental code paths.

#include <algorithm>
#include <cmath>
#include <vector>

#include "lumifuse/image.hpp"

namespace testutil {

inline int clampi(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }

// Full 25-tap binomial convolution with replicated edges, then decimation.
inline lumifuse::Raster oracle_reduce(const lumifuse::Raster& src) {
    static const double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    lumifuse::Raster out =
        lumifuse::make_raster((src.width + 1) / 2, (src.height + 1) / 2, src.channels);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                double acc = 0.0;
                for (int j = -2; j <= 2; ++j) {
                    for (int i = -2; i <= 2; ++i) {
                        const int sx = clampi(2 * x + i, 0, src.width - 1);
                        const int sy = clampi(2 * y + j, 0, src.height - 1);
                        acc += k[i + 2] * k[j + 2] * src.at(sx, sy, c);
                    }
                }
                out.at(x, y, c) = acc;
            }
        }
    }
    return out;
}

// Zero-insertion upsample followed by the x4-gain binomial kernel; sources
// are addressed through index clamping in the original domain.
inline lumifuse::Raster oracle_expand(const lumifuse::Raster& src, int tw, int th) {
    static const double k[5] = {2.0 / 16, 8.0 / 16, 12.0 / 16, 8.0 / 16, 2.0 / 16};
    lumifuse::Raster out = lumifuse::make_raster(tw, th, src.channels);
    const auto upsampled = [&](int jx, int jy, int c) {
        if (jx % 2 != 0 || jy % 2 != 0) return 0.0;
        return src.at(clampi(jx / 2, 0, src.width - 1), clampi(jy / 2, 0, src.height - 1), c);
    };
    for (int y = 0; y < th; ++y) {
        for (int x = 0; x < tw; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                double acc = 0.0;
                for (int j = -2; j <= 2; ++j) {
                    for (int i = -2; i <= 2; ++i) {
                        acc += k[i + 2] * k[j + 2] * upsampled(x + i, y + j, c);
                    }
                }
                out.at(x, y, c) = acc;
            }
        }
    }
    return out;
}

struct OracleBands {
    lumifuse::Raster ll, lh, hl, hh;
};

// One Haar level straight from the 2x2 block formulas; odd extents repeat
// the last row/column.
inline OracleBands oracle_haar_level(const lumifuse::Raster& p) {
    const int hw = (p.width + 1) / 2;
    const int hh = (p.height + 1) / 2;
    OracleBands bands{lumifuse::make_raster(hw, hh, 1), lumifuse::make_raster(hw, hh, 1),
                      lumifuse::make_raster(hw, hh, 1), lumifuse::make_raster(hw, hh, 1)};
    for (int y = 0; y < hh; ++y) {
        for (int x = 0; x < hw; ++x) {
            const double x00 = p.at(clampi(2 * x, 0, p.width - 1), clampi(2 * y, 0, p.height - 1));
            const double x10 =
                p.at(clampi(2 * x + 1, 0, p.width - 1), clampi(2 * y, 0, p.height - 1));
            const double x01 =
                p.at(clampi(2 * x, 0, p.width - 1), clampi(2 * y + 1, 0, p.height - 1));
            const double x11 =
                p.at(clampi(2 * x + 1, 0, p.width - 1), clampi(2 * y + 1, 0, p.height - 1));
            bands.ll.at(x, y) = 0.5 * (x00 + x10 + x01 + x11);
            bands.lh.at(x, y) = 0.5 * (x00 + x10 - x01 - x11);
            bands.hl.at(x, y) = 0.5 * (x00 - x10 + x01 - x11);
            bands.hh.at(x, y) = 0.5 * (x00 - x10 - x01 + x11);
        }
    }
    return bands;
}

inline double oracle_sharpness(const lumifuse::Image& img) {
    const lumifuse::Raster p = lumifuse::luminance_plane(img);
    double total = 0.0;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const int xl = clampi(x - 1, 0, p.width - 1);
            const int xr = clampi(x + 1, 0, p.width - 1);
            const int yu = clampi(y - 1, 0, p.height - 1);
            const int yd = clampi(y + 1, 0, p.height - 1);
            const double gx = (p.at(xr, y) - p.at(xl, y)) / (xr - xl);
            const double gy = (p.at(x, yd) - p.at(x, yu)) / (yd - yu);
            total += std::hypot(gx, gy);
        }
    }
    return total / (static_cast<double>(p.width) * p.height);
}

inline double oracle_rms_contrast(const lumifuse::Image& img) {
    const lumifuse::Raster p = lumifuse::luminance_plane(img);
    double mean = 0.0;
    for (double v : p.data) mean += v;
    mean /= static_cast<double>(p.data.size());
    double acc = 0.0;
    for (double v : p.data) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(p.data.size()));
}

inline double oracle_background_difference(const lumifuse::Image& img,
                                           const lumifuse::Image& bg) {
    const lumifuse::Raster a = lumifuse::luminance_plane(img);
    const lumifuse::Raster b = lumifuse::luminance_plane(bg);
    double acc = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) acc += std::fabs(a.data[i] - b.data[i]);
    return acc / static_cast<double>(a.data.size());
}

}  // namespace testutil
