#include "lumifuse/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lumifuse/rng.hpp"

namespace lumifuse {

namespace {

constexpr double kAmbient = 0.05;
constexpr double kLightGain = 1.45;
constexpr double kElevationRad = 30.0 * std::numbers::pi / 180.0;
constexpr int kBackgroundFrames = 100;

// LED azimuths 120 degrees apart, mirroring a tri-LED sensor head.
constexpr std::array<double, 3> kAzimuthDeg = {90.0, 210.0, 330.0};

// Each LED bleeds into the neighboring channels; at full intensity the
// summed lights push lit slopes past the sensor's range, which is what
// washes out bright static captures.
constexpr double kLightColor[3][3] = {
    {1.00, 0.25, 0.10},  // red LED
    {0.20, 1.00, 0.20},  // green LED
    {0.10, 0.25, 1.00},  // blue LED
};

constexpr uint64_t kTagNoise = 0x6e6f6973;   // noise stream root
constexpr uint64_t kTagBumps = 0x62756d70;   // bump placement stream

struct Vec3 {
    double x, y, z;
};

uint64_t pattern_code(const IlluminationPattern& p) {
    return static_cast<uint64_t>(p.r) * 256 + static_cast<uint64_t>(p.g) * 16 +
           static_cast<uint64_t>(p.b);
}

double smooth_coverage(double signed_distance, double softness) {
    return std::clamp(0.5 + signed_distance / softness, 0.0, 1.0);
}

// Height map in height units, zero meaning the undisturbed gel surface.
std::vector<double> build_height_map(const SceneSpec& scene) {
    const int w = scene.width;
    const int h = scene.height;
    std::vector<double> height(static_cast<size_t>(w) * h, 0.0);
    const double cx = 0.5 * (w - 1);
    const double cy = 0.5 * (h - 1);

    switch (scene.shape) {
        case SceneShape::Sphere: {
            const double r2 = scene.radius_px * scene.radius_px;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double dx = x - cx;
                    const double dy = y - cy;
                    const double t = 1.0 - (dx * dx + dy * dy) / r2;
                    if (t > 0.0) {
                        height[static_cast<size_t>(y) * w + x] = scene.depth * std::sqrt(t);
                    }
                }
            }
            break;
        }
        case SceneShape::Edge: {
            // Vertical step through the center, 4 px ramp.
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    height[static_cast<size_t>(y) * w + x] =
                        scene.depth * smooth_coverage(cx - x, 4.0);
                }
            }
            break;
        }
        case SceneShape::RidgeGrid: {
            const double freq = 2.0 * std::numbers::pi / scene.period_px;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double v = std::sin(freq * x) * std::sin(freq * y);
                    height[static_cast<size_t>(y) * w + x] = scene.depth * 0.5 * (v + 1.0);
                }
            }
            break;
        }
        case SceneShape::TextStamp: {
            // Plus sign plus a diagonal stroke, proportional to the frame.
            const double stroke = std::max(2.0, 0.08 * std::min(w, h));
            const auto segment_distance = [](double px, double py, double ax, double ay,
                                             double bx, double by) {
                const double vx = bx - ax, vy = by - ay;
                const double len2 = vx * vx + vy * vy;
                double t = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                const double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
                return std::sqrt(dx * dx + dy * dy);
            };
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double d1 =
                        segment_distance(x, y, 0.2 * w, cy, 0.8 * w, cy);
                    const double d2 =
                        segment_distance(x, y, cx, 0.2 * h, cx, 0.8 * h);
                    const double d3 =
                        segment_distance(x, y, 0.25 * w, 0.25 * h, 0.75 * w, 0.75 * h);
                    const double d = std::min({d1, d2, d3});
                    height[static_cast<size_t>(y) * w + x] =
                        scene.depth * smooth_coverage(stroke - d, 3.0);
                }
            }
            break;
        }
        case SceneShape::RandomBumps: {
            const uint64_t key = derive_key(scene.seed, kTagBumps);
            const int count = std::max(
                3, static_cast<int>(std::lround((w / scene.period_px) * (h / scene.period_px))));
            struct Bump {
                double x, y, sigma;
            };
            std::vector<Bump> bumps;
            bumps.reserve(count);
            for (int i = 0; i < count; ++i) {
                const double bx = uniform01(key, 3 * i + 0) * w;
                const double by = uniform01(key, 3 * i + 1) * h;
                const double scale = 0.6 + 0.8 * uniform01(key, 3 * i + 2);
                bumps.push_back({bx, by, 0.5 * scene.radius_px * scale});
            }
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    double acc = 0.0;
                    for (const Bump& bump : bumps) {
                        const double dx = x - bump.x;
                        const double dy = y - bump.y;
                        acc += std::exp(-(dx * dx + dy * dy) / (2.0 * bump.sigma * bump.sigma));
                    }
                    height[static_cast<size_t>(y) * w + x] = scene.depth * std::min(acc, 1.0);
                }
            }
            break;
        }
    }
    return height;
}

Image shade(const SceneSpec& scene, const IlluminationPattern& pattern,
            const std::vector<double>& height, uint64_t noise_key) {
    const int w = scene.width;
    const int h = scene.height;

    std::array<Vec3, 3> lights;
    for (int k = 0; k < 3; ++k) {
        const double az = kAzimuthDeg[k] * std::numbers::pi / 180.0;
        lights[k] = {std::cos(kElevationRad) * std::cos(az),
                     std::cos(kElevationRad) * std::sin(az), std::sin(kElevationRad)};
    }
    const std::array<double, 3> drive = {pattern.r / 15.0, pattern.g / 15.0, pattern.b / 15.0};

    Image img = make_image(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto sample = [&](int sx, int sy) {
                return height[static_cast<size_t>(std::clamp(sy, 0, h - 1)) * w +
                              std::clamp(sx, 0, w - 1)];
            };
            const double hx = x == 0               ? sample(1, y) - sample(0, y)
                              : x == w - 1         ? sample(x, y) - sample(x - 1, y)
                                                   : 0.5 * (sample(x + 1, y) - sample(x - 1, y));
            const double hy = y == 0               ? sample(x, 1) - sample(x, 0)
                              : y == h - 1         ? sample(x, y) - sample(x, y - 1)
                                                   : 0.5 * (sample(x, y + 1) - sample(x, y - 1));
            const double inv_len = 1.0 / std::sqrt(hx * hx + hy * hy + 1.0);
            const Vec3 normal{-hx * inv_len, -hy * inv_len, inv_len};

            for (int c = 0; c < 3; ++c) {
                double value = kAmbient;
                for (int k = 0; k < 3; ++k) {
                    const double lambert =
                        std::max(0.0, normal.x * lights[k].x + normal.y * lights[k].y +
                                          normal.z * lights[k].z);
                    value += drive[k] * kLightColor[k][c] * kLightGain * lambert;
                }
                value = std::clamp(value, 0.0, 1.0);
                if (scene.noise_sigma > 0.0) {
                    const uint64_t idx = (static_cast<uint64_t>(y) * w + x) * 3 + c;
                    value += scene.noise_sigma * gaussian01(noise_key, idx);
                    value = std::clamp(value, 0.0, 1.0);
                }
                // The sensor delivers 8-bit frames; quantize like one.
                img.at(x, y, c) = static_cast<float>(std::round(value * 255.0) / 255.0);
            }
        }
    }
    return img;
}

uint64_t noise_key_for(const SceneSpec& scene, const IlluminationPattern& pattern,
                       uint64_t frame) {
    const uint64_t base = derive_key(scene.seed, kTagNoise);
    return derive_key(derive_key(base, pattern_code(pattern)), frame);
}

}  // namespace

std::string shape_name(SceneShape s) {
    switch (s) {
        case SceneShape::Sphere: return "sphere";
        case SceneShape::Edge: return "edge";
        case SceneShape::RidgeGrid: return "ridge_grid";
        case SceneShape::TextStamp: return "text_stamp";
        case SceneShape::RandomBumps: return "random_bumps";
    }
    return "unknown";
}

SceneShape parse_shape(const std::string& name) {
    if (name == "sphere") return SceneShape::Sphere;
    if (name == "edge") return SceneShape::Edge;
    if (name == "ridge_grid") return SceneShape::RidgeGrid;
    if (name == "text_stamp") return SceneShape::TextStamp;
    if (name == "random_bumps") return SceneShape::RandomBumps;
    throw std::invalid_argument("unknown scene shape '" + name + "'");
}

void validate_scene(const SceneSpec& scene) {
    if (scene.width < 16 || scene.height < 16) {
        throw std::invalid_argument("scene dimensions must be at least 16x16");
    }
    if (scene.depth <= 0.0) {
        throw std::invalid_argument("scene depth must be positive");
    }
    if (scene.noise_sigma < 0.0) {
        throw std::invalid_argument("scene noise_sigma must be non-negative");
    }
    if (scene.radius_px <= 0.0 || scene.period_px <= 0.0) {
        throw std::invalid_argument("scene radius/period must be positive");
    }
}

void to_json(nlohmann::json& j, const SceneSpec& scene) {
    j = nlohmann::json{{"shape", shape_name(scene.shape)},
                       {"width", scene.width},
                       {"height", scene.height},
                       {"radius_px", scene.radius_px},
                       {"period_px", scene.period_px},
                       {"depth", scene.depth},
                       {"noise_sigma", scene.noise_sigma},
                       {"seed", scene.seed}};
}

void from_json(const nlohmann::json& j, SceneSpec& scene) {
    scene = SceneSpec{};
    scene.shape = parse_shape(j.at("shape").get<std::string>());
    scene.width = j.value("width", scene.width);
    scene.height = j.value("height", scene.height);
    scene.radius_px = j.value("radius_px", scene.radius_px);
    scene.period_px = j.value("period_px", scene.period_px);
    scene.depth = j.value("depth", scene.depth);
    scene.noise_sigma = j.value("noise_sigma", scene.noise_sigma);
    scene.seed = j.value("seed", scene.seed);
}

Image render(const SceneSpec& scene, const IlluminationPattern& pattern) {
    validate_scene(scene);
    validate_pattern(pattern);
    const std::vector<double> height = build_height_map(scene);
    return shade(scene, pattern, height, noise_key_for(scene, pattern, 0));
}

Image render_background(const SceneSpec& scene, const IlluminationPattern& pattern) {
    validate_scene(scene);
    validate_pattern(pattern);
    const std::vector<double> flat(static_cast<size_t>(scene.width) * scene.height, 0.0);
    if (scene.noise_sigma == 0.0) {
        return shade(scene, pattern, flat, 0);
    }
    Raster acc = make_raster(scene.width, scene.height, 3);
    for (int frame = 0; frame < kBackgroundFrames; ++frame) {
        const Image draw =
            shade(scene, pattern, flat, noise_key_for(scene, pattern, 1 + frame));
        for (size_t i = 0; i < acc.data.size(); ++i) {
            acc.data[i] += draw.data[i];
        }
    }
    for (double& v : acc.data) {
        v = std::round(v / kBackgroundFrames * 255.0) / 255.0;
    }
    return to_image_clamped(acc);
}

}  // namespace lumifuse
