#include "lumifuse/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lumifuse {

namespace {

constexpr double kKernel[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

int ceil_half(int v) { return (v + 1) / 2; }

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Horizontal binomial pass with edge replication.
Raster smooth_rows(const Raster& src) {
    Raster out = make_raster(src.width, src.height, src.channels);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                double acc = 0.0;
                for (int k = -2; k <= 2; ++k) {
                    acc += kKernel[k + 2] * src.at(clamp_index(x + k, src.width), y, c);
                }
                out.at(x, y, c) = acc;
            }
        }
    }
    return out;
}

Raster smooth_cols(const Raster& src) {
    Raster out = make_raster(src.width, src.height, src.channels);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                double acc = 0.0;
                for (int k = -2; k <= 2; ++k) {
                    acc += kKernel[k + 2] * src.at(x, clamp_index(y + k, src.height), c);
                }
                out.at(x, y, c) = acc;
            }
        }
    }
    return out;
}

// 1D expand along a row or column. Phase-split form of zero-insertion
// followed by the doubled kernel: even outputs take {2,12,2}/16, odd
// outputs take {8,8}/16, each summing to 1.
void expand_line(const double* src, int n, double* dst, int m, int stride_src,
                 int stride_dst) {
    for (int t = 0; t < m; ++t) {
        double acc;
        if (t % 2 == 0) {
            const int i = t / 2;
            acc = (2.0 / 16) * src[clamp_index(i - 1, n) * stride_src] +
                  (12.0 / 16) * src[clamp_index(i, n) * stride_src] +
                  (2.0 / 16) * src[clamp_index(i + 1, n) * stride_src];
        } else {
            const int i = t / 2;
            acc = (8.0 / 16) * src[clamp_index(i, n) * stride_src] +
                  (8.0 / 16) * src[clamp_index(i + 1, n) * stride_src];
        }
        dst[t * stride_dst] = acc;
    }
}

}  // namespace

int max_laplacian_levels(int width, int height) {
    int levels = 0;
    int m = std::min(width, height);
    while (ceil_half(m) >= 4) {
        m = ceil_half(m);
        ++levels;
    }
    return std::max(levels, 1);
}

Raster gaussian_reduce(const Raster& src) {
    if (std::min(src.width, src.height) < 2) {
        throw std::invalid_argument("gaussian_reduce: image smaller than 2x2");
    }
    const Raster smoothed = smooth_cols(smooth_rows(src));
    Raster out = make_raster(ceil_half(src.width), ceil_half(src.height), src.channels);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            for (int c = 0; c < src.channels; ++c) {
                out.at(x, y, c) = smoothed.at(2 * x, 2 * y, c);
            }
        }
    }
    return out;
}

Image gaussian_reduce(const Image& img) {
    return to_image_clamped(gaussian_reduce(to_raster(img)));
}

Raster expand(const Raster& src, int target_w, int target_h) {
    if (ceil_half(target_w) != src.width || ceil_half(target_h) != src.height) {
        throw std::invalid_argument(
            "expand: target " + std::to_string(target_w) + "x" + std::to_string(target_h) +
            " does not ceil-halve to source " + std::to_string(src.width) + "x" +
            std::to_string(src.height));
    }
    // Rows first, then columns.
    Raster wide = make_raster(target_w, src.height, src.channels);
    for (int y = 0; y < src.height; ++y) {
        for (int c = 0; c < src.channels; ++c) {
            expand_line(&src.data[(static_cast<size_t>(y) * src.width) * src.channels + c],
                        src.width,
                        &wide.data[(static_cast<size_t>(y) * target_w) * src.channels + c],
                        target_w, src.channels, src.channels);
        }
    }
    Raster out = make_raster(target_w, target_h, src.channels);
    const int row_stride = target_w * src.channels;
    for (int x = 0; x < target_w; ++x) {
        for (int c = 0; c < src.channels; ++c) {
            expand_line(&wide.data[static_cast<size_t>(x) * src.channels + c], src.height,
                        &out.data[static_cast<size_t>(x) * src.channels + c], target_h,
                        row_stride, row_stride);
        }
    }
    return out;
}

Image expand(const Image& img, int target_w, int target_h) {
    return to_image_clamped(expand(to_raster(img), target_w, target_h));
}

LaplacianPyramid build_laplacian(const Raster& src, int levels) {
    if (levels < 1) {
        throw std::invalid_argument("build_laplacian: levels must be >= 1");
    }
    // Gaussian chain G_0..G_n; each reduce needs a >= 2x2 input.
    std::vector<Raster> gaussian;
    gaussian.reserve(static_cast<size_t>(levels) + 1);
    gaussian.push_back(src);
    for (int i = 0; i < levels; ++i) {
        const Raster& g = gaussian.back();
        if (std::min(g.width, g.height) < 2) {
            throw std::invalid_argument("build_laplacian: " + std::to_string(levels) +
                                        " levels is too many for " +
                                        std::to_string(src.width) + "x" +
                                        std::to_string(src.height));
        }
        gaussian.push_back(gaussian_reduce(g));
    }

    LaplacianPyramid pyr;
    pyr.levels.reserve(static_cast<size_t>(levels) + 1);
    for (int i = 0; i < levels; ++i) {
        const Raster& fine = gaussian[i];
        Raster up = expand(gaussian[i + 1], fine.width, fine.height);
        Raster detail = make_raster(fine.width, fine.height, fine.channels);
        for (size_t s = 0; s < fine.data.size(); ++s) {
            detail.data[s] = fine.data[s] - up.data[s];
        }
        pyr.levels.push_back(std::move(detail));
    }
    pyr.levels.push_back(gaussian.back());
    return pyr;
}

LaplacianPyramid build_laplacian(const Image& img, int levels) {
    return build_laplacian(to_raster(img), levels);
}

Raster reconstruct_raster(const LaplacianPyramid& pyr) {
    if (pyr.levels.empty()) {
        throw std::invalid_argument("reconstruct: empty pyramid");
    }
    Raster acc = pyr.levels.back();
    for (size_t i = pyr.levels.size() - 1; i-- > 0;) {
        const Raster& detail = pyr.levels[i];
        Raster up = expand(acc, detail.width, detail.height);
        for (size_t s = 0; s < up.data.size(); ++s) {
            up.data[s] += detail.data[s];
        }
        acc = std::move(up);
    }
    return acc;
}

Image reconstruct(const LaplacianPyramid& pyr) {
    return to_image_clamped(reconstruct_raster(pyr));
}

Image fuse_laplacian(const std::vector<Image>& inputs, int levels) {
    if (inputs.size() < 2) {
        throw std::invalid_argument("fuse_laplacian: need at least 2 inputs, got " +
                                    std::to_string(inputs.size()));
    }
    for (const Image& img : inputs) {
        if (!img.same_shape(inputs.front())) {
            throw std::invalid_argument("fuse_laplacian: input dimensions differ");
        }
    }

    std::vector<LaplacianPyramid> pyramids;
    pyramids.reserve(inputs.size());
    for (const Image& img : inputs) {
        pyramids.push_back(build_laplacian(img, levels));
    }

    LaplacianPyramid composite;
    composite.levels.reserve(pyramids[0].levels.size());
    const size_t residual = pyramids[0].levels.size() - 1;
    for (size_t level = 0; level <= residual; ++level) {
        Raster merged = pyramids[0].levels[level];
        if (level == residual) {
            for (size_t n = 1; n < pyramids.size(); ++n) {
                const Raster& other = pyramids[n].levels[level];
                for (size_t s = 0; s < merged.data.size(); ++s) {
                    merged.data[s] += other.data[s];
                }
            }
            const double inv = 1.0 / static_cast<double>(pyramids.size());
            for (double& v : merged.data) v *= inv;
        } else {
            for (size_t n = 1; n < pyramids.size(); ++n) {
                const Raster& other = pyramids[n].levels[level];
                for (size_t s = 0; s < merged.data.size(); ++s) {
                    if (std::abs(other.data[s]) > std::abs(merged.data[s])) {
                        merged.data[s] = other.data[s];
                    }
                }
            }
        }
        composite.levels.push_back(std::move(merged));
    }
    return reconstruct(composite);
}

}  // namespace lumifuse
