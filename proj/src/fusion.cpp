#include "lumifuse/fusion.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <stdexcept>

#include "lumifuse/pyramid.hpp"
#include "lumifuse/wavelet.hpp"

namespace lumifuse {

namespace {

constexpr double kBroveyEpsilon = 1e-8;

void require_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(op) + ": input dimensions differ");
    }
}

}  // namespace

void validate_method(const FusionMethod& m) {
    if ((m.kind == FusionKind::LaplacianPyramid || m.kind == FusionKind::Dwt) && m.levels < 1) {
        throw std::invalid_argument("fusion method '" + method_name(m) +
                                    "' needs at least 1 level");
    }
}

std::string method_name(const FusionMethod& m) {
    switch (m.kind) {
        case FusionKind::ChannelSum: return "channel-sum";
        case FusionKind::Brovey: return "brovey";
        case FusionKind::LaplacianPyramid: return "laplacian:" + std::to_string(m.levels);
        case FusionKind::Dwt: return "dwt:" + std::to_string(m.levels);
    }
    return "unknown";
}

FusionMethod parse_method(const std::string& name) {
    std::string base = name;
    int levels = -1;
    if (const size_t colon = name.find(':'); colon != std::string::npos) {
        base = name.substr(0, colon);
        const std::string depth = name.substr(colon + 1);
        auto [ptr, ec] = std::from_chars(depth.data(), depth.data() + depth.size(), levels);
        if (ec != std::errc{} || ptr != depth.data() + depth.size() || levels < 1) {
            throw std::invalid_argument("bad level count in fusion method '" + name + "'");
        }
    }
    FusionMethod m;
    if (base == "channel-sum") {
        m = FusionMethod::channel_sum();
    } else if (base == "brovey") {
        m = FusionMethod::brovey();
    } else if (base == "laplacian") {
        m = FusionMethod::laplacian(levels > 0 ? levels : 4);
    } else if (base == "dwt") {
        m = FusionMethod::dwt(levels > 0 ? levels : 2);
    } else {
        throw std::invalid_argument("unknown fusion method '" + name +
                                    "' (expected channel-sum, brovey, laplacian, dwt)");
    }
    if (levels > 0 && (m.kind == FusionKind::ChannelSum || m.kind == FusionKind::Brovey)) {
        throw std::invalid_argument("fusion method '" + base + "' takes no level parameter");
    }
    return m;
}

int method_min_inputs(const FusionMethod& m) {
    switch (m.kind) {
        case FusionKind::ChannelSum:
        case FusionKind::Brovey: return 3;
        case FusionKind::LaplacianPyramid:
        case FusionKind::Dwt: return 2;
    }
    return 2;
}

int method_max_inputs(const FusionMethod& m) {
    switch (m.kind) {
        case FusionKind::ChannelSum:
        case FusionKind::Brovey: return 3;
        case FusionKind::LaplacianPyramid:
        case FusionKind::Dwt: return INT_MAX;
    }
    return INT_MAX;
}

Image fuse_channel_sum(const Image& lit_r, const Image& lit_g, const Image& lit_b) {
    require_same_shape(lit_r, lit_g, "fuse_channel_sum");
    require_same_shape(lit_r, lit_b, "fuse_channel_sum");
    if (lit_r.channels != 3) {
        throw std::invalid_argument("fuse_channel_sum: inputs must be 3-channel");
    }
    Image out = make_image(lit_r.width, lit_r.height, 3);
    const size_t pixels = static_cast<size_t>(out.width) * out.height;
    for (size_t i = 0; i < pixels; ++i) {
        out.data[i * 3 + 0] = lit_r.data[i * 3 + 0];
        out.data[i * 3 + 1] = lit_g.data[i * 3 + 1];
        out.data[i * 3 + 2] = lit_b.data[i * 3 + 2];
    }
    return out;
}

Image fuse_brovey(const Image& a, const Image& b, const Image& c) {
    require_same_shape(a, b, "fuse_brovey");
    require_same_shape(a, c, "fuse_brovey");

    const Raster la = luminance_plane(a);
    const Raster lb = luminance_plane(b);
    const Raster lc = luminance_plane(c);

    Image out = make_image(a.width, a.height, a.channels);
    const size_t pixels = static_cast<size_t>(a.width) * a.height;
    for (size_t i = 0; i < pixels; ++i) {
        const double denom = la.data[i] + lb.data[i] + lc.data[i] + kBroveyEpsilon;
        const double na = la.data[i] / denom;
        const double nb = lb.data[i] / denom;
        const double nc = lc.data[i] / denom;
        for (int ch = 0; ch < a.channels; ++ch) {
            const size_t s = i * a.channels + ch;
            const double v = na * a.data[s] + nb * b.data[s] + nc * c.data[s];
            out.data[s] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
    }
    return out;
}

Image fuse(const FusionMethod& method, const std::vector<Image>& inputs) {
    validate_method(method);
    const int lo = method_min_inputs(method);
    const int hi = method_max_inputs(method);
    const int n = static_cast<int>(inputs.size());
    if (n < lo || n > hi) {
        const std::string expected =
            lo == hi ? "exactly " + std::to_string(lo) : "at least " + std::to_string(lo);
        throw std::invalid_argument("fusion method '" + method_name(method) + "' takes " +
                                    expected + " inputs, got " + std::to_string(n));
    }
    for (const Image& img : inputs) {
        if (!img.same_shape(inputs.front())) {
            throw std::invalid_argument("fuse: input dimensions differ");
        }
    }

    switch (method.kind) {
        case FusionKind::ChannelSum:
            return fuse_channel_sum(inputs[0], inputs[1], inputs[2]);
        case FusionKind::Brovey:
            return fuse_brovey(inputs[0], inputs[1], inputs[2]);
        case FusionKind::LaplacianPyramid: {
            const int cap = max_laplacian_levels(inputs[0].width, inputs[0].height);
            return fuse_laplacian(inputs, std::min(method.levels, cap));
        }
        case FusionKind::Dwt: {
            const int cap = max_dwt_levels(inputs[0].width, inputs[0].height);
            return fuse_dwt(inputs, std::max(1, std::min(method.levels, cap)));
        }
    }
    throw std::invalid_argument("fuse: unknown method");
}

}  // namespace lumifuse
