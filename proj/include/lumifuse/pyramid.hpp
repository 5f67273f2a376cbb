#pragma once

#include <vector>

#include "lumifuse/image.hpp"

namespace lumifuse {

// Band-pass stack: levels[0..n-1] hold signed detail layers from fine to
// coarse, levels[n] is the low-pass residual. Level i+1 is ceil-half the
// size of level i. Detail samples are unbounded.
struct LaplacianPyramid {
    std::vector<Raster> levels;
};

// Largest depth whose residual still has min dimension >= 4.
int max_laplacian_levels(int width, int height);

// 5-tap binomial smoothing [1,4,6,4,1]/16 with edge replication, then
// decimation to ceil(w/2) x ceil(h/2). Requires min(width,height) >= 2.
Raster gaussian_reduce(const Raster& src);
Image gaussian_reduce(const Image& img);

// Zero-insert upsample to (target_w, target_h) followed by the doubled
// binomial kernel; per-phase weights sum to 1, so constants are preserved.
// Target dims must ceil-halve back to the source dims.
Raster expand(const Raster& src, int target_w, int target_h);
Image expand(const Image& img, int target_w, int target_h);

LaplacianPyramid build_laplacian(const Image& img, int levels);
LaplacianPyramid build_laplacian(const Raster& src, int levels);

Raster reconstruct_raster(const LaplacianPyramid& pyr);
Image reconstruct(const LaplacianPyramid& pyr);  // clamped to [0,1]

// Per level and sample: detail with the largest magnitude wins (ties go to
// the earliest input); the residual is the mean across inputs.
Image fuse_laplacian(const std::vector<Image>& inputs, int levels);

}  // namespace lumifuse
