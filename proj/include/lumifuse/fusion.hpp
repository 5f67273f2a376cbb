#pragma once

#include <string>
#include <vector>

#include "lumifuse/image.hpp"

namespace lumifuse {

enum class FusionKind { ChannelSum, Brovey, LaplacianPyramid, Dwt };

// One of the four fusion algorithms plus its depth parameter. `levels` is
// the pyramid or wavelet decomposition depth and is ignored by the two
// pixel-domain methods.
struct FusionMethod {
    FusionKind kind = FusionKind::Dwt;
    int levels = 2;

    static FusionMethod channel_sum() { return {FusionKind::ChannelSum, 0}; }
    static FusionMethod brovey() { return {FusionKind::Brovey, 0}; }
    static FusionMethod laplacian(int levels = 4) { return {FusionKind::LaplacianPyramid, levels}; }
    static FusionMethod dwt(int levels = 2) { return {FusionKind::Dwt, levels}; }

    bool operator==(const FusionMethod&) const = default;
};

void validate_method(const FusionMethod& m);

// "channel-sum", "brovey", "laplacian:4", "dwt:2".
std::string method_name(const FusionMethod& m);
FusionMethod parse_method(const std::string& name);

int method_min_inputs(const FusionMethod& m);
int method_max_inputs(const FusionMethod& m);

// Channel reassembly: output red is lit_r's red channel, green is lit_g's
// green, blue is lit_b's blue. Inputs are the captures taken under
// red-only / green-only / blue-only illumination.
Image fuse_channel_sum(const Image& lit_r, const Image& lit_g, const Image& lit_b);

// Per pixel: weighted sum of the three inputs, each weighted by its share
// of the pixel's total luminance (epsilon-guarded against dark pixels).
Image fuse_brovey(const Image& a, const Image& b, const Image& c);

// Dispatch over all four methods. The multi-scale methods cap the
// configured depth to what the image size supports.
Image fuse(const FusionMethod& method, const std::vector<Image>& inputs);

}  // namespace lumifuse
