#include "lumifuse/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lumifuse {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

int ceil_half(int v) { return (v + 1) / 2; }

// Pairwise Haar step over one line. Odd lengths take the symmetric
// half-sample extension (last sample repeated), which makes the final
// detail coefficient zero and keeps the inverse exact.
void haar_forward_line(const double* src, int n, int stride, double* low, double* high,
                       int out_stride) {
    const int half = ceil_half(n);
    for (int i = 0; i < half; ++i) {
        const double x0 = src[static_cast<size_t>(2 * i) * stride];
        const double x1 =
            (2 * i + 1 < n) ? src[static_cast<size_t>(2 * i + 1) * stride] : x0;
        low[static_cast<size_t>(i) * out_stride] = (x0 + x1) * kInvSqrt2;
        high[static_cast<size_t>(i) * out_stride] = (x0 - x1) * kInvSqrt2;
    }
}

void haar_inverse_line(const double* low, const double* high, int in_stride, double* dst,
                       int n, int stride) {
    const int half = ceil_half(n);
    for (int i = 0; i < half; ++i) {
        const double a = low[static_cast<size_t>(i) * in_stride];
        const double d = high[static_cast<size_t>(i) * in_stride];
        dst[static_cast<size_t>(2 * i) * stride] = (a + d) * kInvSqrt2;
        if (2 * i + 1 < n) {
            dst[static_cast<size_t>(2 * i + 1) * stride] = (a - d) * kInvSqrt2;
        }
    }
}

struct SplitPair {
    Raster low;
    Raster high;
};

SplitPair split_rows(const Raster& plane) {
    const int half_w = ceil_half(plane.width);
    SplitPair out{make_raster(half_w, plane.height, 1), make_raster(half_w, plane.height, 1)};
    for (int y = 0; y < plane.height; ++y) {
        haar_forward_line(&plane.data[static_cast<size_t>(y) * plane.width], plane.width, 1,
                          &out.low.data[static_cast<size_t>(y) * half_w],
                          &out.high.data[static_cast<size_t>(y) * half_w], 1);
    }
    return out;
}

SplitPair split_cols(const Raster& plane) {
    const int half_h = ceil_half(plane.height);
    SplitPair out{make_raster(plane.width, half_h, 1), make_raster(plane.width, half_h, 1)};
    for (int x = 0; x < plane.width; ++x) {
        haar_forward_line(&plane.data[x], plane.height, plane.width, &out.low.data[x],
                          &out.high.data[x], plane.width);
    }
    return out;
}

Raster join_cols(const Raster& low, const Raster& high, int original_h) {
    Raster out = make_raster(low.width, original_h, 1);
    for (int x = 0; x < low.width; ++x) {
        haar_inverse_line(&low.data[x], &high.data[x], low.width, &out.data[x], original_h,
                          low.width);
    }
    return out;
}

Raster join_rows(const Raster& low, const Raster& high, int original_w) {
    Raster out = make_raster(original_w, low.height, 1);
    for (int y = 0; y < low.height; ++y) {
        haar_inverse_line(&low.data[static_cast<size_t>(y) * low.width],
                          &high.data[static_cast<size_t>(y) * high.width], 1,
                          &out.data[static_cast<size_t>(y) * original_w], original_w, 1);
    }
    return out;
}

}  // namespace

int max_dwt_levels(int width, int height) {
    int levels = 0;
    int w = width, h = height;
    while (std::min(w, h) >= 2) {
        w = ceil_half(w);
        h = ceil_half(h);
        ++levels;
    }
    return levels;
}

WaveletDecomposition dwt2(const Raster& plane, int levels) {
    if (plane.channels != 1) {
        throw std::invalid_argument("dwt2: expected a single-channel plane");
    }
    if (levels < 1) {
        throw std::invalid_argument("dwt2: levels must be >= 1");
    }
    if (levels > max_dwt_levels(plane.width, plane.height)) {
        throw std::invalid_argument("dwt2: " + std::to_string(levels) +
                                    " levels is too many for " + std::to_string(plane.width) +
                                    "x" + std::to_string(plane.height));
    }

    WaveletDecomposition dec;
    Raster current = plane;
    for (int level = 0; level < levels; ++level) {
        SplitPair rows = split_rows(current);
        SplitPair ll_lh = split_cols(rows.low);
        SplitPair hl_hh = split_cols(rows.high);

        WaveletBands bands;
        bands.lh = std::move(ll_lh.high);
        bands.hl = std::move(hl_hh.low);
        bands.hh = std::move(hl_hh.high);
        bands.input_width = current.width;
        bands.input_height = current.height;
        dec.levels.push_back(std::move(bands));
        current = std::move(ll_lh.low);
    }
    dec.final_ll = std::move(current);
    return dec;
}

WaveletDecomposition dwt2(const Image& img, int levels) {
    if (img.channels != 1) {
        throw std::invalid_argument("dwt2: expected a 1-channel image");
    }
    return dwt2(to_raster(img), levels);
}

Raster idwt2_raster(const WaveletDecomposition& dec) {
    if (dec.levels.empty()) {
        throw std::invalid_argument("idwt2: empty decomposition");
    }
    Raster current = dec.final_ll;
    for (size_t i = dec.levels.size(); i-- > 0;) {
        const WaveletBands& bands = dec.levels[i];
        Raster row_low = join_cols(current, bands.lh, bands.input_height);
        Raster row_high = join_cols(bands.hl, bands.hh, bands.input_height);
        current = join_rows(row_low, row_high, bands.input_width);
    }
    return current;
}

Image idwt2(const WaveletDecomposition& dec) {
    return to_image_clamped(idwt2_raster(dec));
}

Image fuse_dwt(const std::vector<Image>& inputs, int levels) {
    if (inputs.size() < 2) {
        throw std::invalid_argument("fuse_dwt: need at least 2 inputs, got " +
                                    std::to_string(inputs.size()));
    }
    for (const Image& img : inputs) {
        if (!img.same_shape(inputs.front())) {
            throw std::invalid_argument("fuse_dwt: input dimensions differ");
        }
    }

    const int channels = inputs.front().channels;
    std::vector<Image> fused_planes;
    fused_planes.reserve(channels);

    for (int c = 0; c < channels; ++c) {
        std::vector<WaveletDecomposition> decs;
        decs.reserve(inputs.size());
        for (const Image& img : inputs) {
            decs.push_back(dwt2(to_raster(extract_channel(img, c)), levels));
        }

        WaveletDecomposition composite = std::move(decs[0]);
        for (size_t n = 1; n < decs.size(); ++n) {
            for (size_t level = 0; level < composite.levels.size(); ++level) {
                for (Raster WaveletBands::* band :
                     {&WaveletBands::lh, &WaveletBands::hl, &WaveletBands::hh}) {
                    Raster& dst = composite.levels[level].*band;
                    const Raster& src = decs[n].levels[level].*band;
                    for (size_t s = 0; s < dst.data.size(); ++s) {
                        if (std::abs(src.data[s]) > std::abs(dst.data[s])) {
                            dst.data[s] = src.data[s];
                        }
                    }
                }
            }
            for (size_t s = 0; s < composite.final_ll.data.size(); ++s) {
                composite.final_ll.data[s] += decs[n].final_ll.data[s];
            }
        }
        const double inv = 1.0 / static_cast<double>(inputs.size());
        for (double& v : composite.final_ll.data) v *= inv;

        fused_planes.push_back(idwt2(composite));
    }
    return merge_channels(fused_planes);
}

}  // namespace lumifuse
