#pragma once

#include <vector>

#include "lumifuse/image.hpp"

namespace lumifuse {

// One decomposition level. Band names follow the row/column filter order:
// lh = row-low col-high (horizontal detail), hl = row-high col-low
// (vertical detail), hh = diagonal. input_width/height record the extent
// the level was split from, which the inverse needs on odd sizes.
struct WaveletBands {
    Raster lh;
    Raster hl;
    Raster hh;
    int input_width = 0;
    int input_height = 0;
};

// Multi-level Haar decomposition of a single plane, finest level first,
// plus the coarsest approximation band.
struct WaveletDecomposition {
    std::vector<WaveletBands> levels;
    Raster final_ll;
};

// Largest depth where every decomposed plane still has min dimension >= 2.
int max_dwt_levels(int width, int height);

WaveletDecomposition dwt2(const Raster& plane, int levels);
WaveletDecomposition dwt2(const Image& img, int levels);  // 1-channel input

Raster idwt2_raster(const WaveletDecomposition& dec);
Image idwt2(const WaveletDecomposition& dec);  // clamped to [0,1]

// Per-channel decomposition of every input; detail coefficients merge by
// largest magnitude (ties to the earliest input), approximations by mean.
Image fuse_dwt(const std::vector<Image>& inputs, int levels);

}  // namespace lumifuse
