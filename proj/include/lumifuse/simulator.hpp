#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "lumifuse/image.hpp"
#include "lumifuse/pattern.hpp"

namespace lumifuse {

enum class SceneShape { Sphere, Edge, RidgeGrid, TextStamp, RandomBumps };

std::string shape_name(SceneShape s);
SceneShape parse_shape(const std::string& name);

// Synthetic gel-indentation scene. The renderer turns this into a height
// map, shades it with the sensor's three colored directional lights, and
// adds seeded per-sample noise.
struct SceneSpec {
    SceneShape shape = SceneShape::Sphere;
    int width = 64;
    int height = 48;
    double radius_px = 14.0;   // sphere / bump radius
    double period_px = 16.0;   // ridge spacing, bump density
    double depth = 6.0;        // indentation depth in height units
    double noise_sigma = 0.0;  // per-sample Gaussian noise std
    uint64_t seed = 0;
};

void validate_scene(const SceneSpec& scene);

void to_json(nlohmann::json& j, const SceneSpec& scene);
void from_json(const nlohmann::json& j, SceneSpec& scene);

// Lambertian shading under the given LED pattern. Deterministic for a
// fixed (scene, pattern): the noise stream is keyed on scene seed and
// pattern, never on global state.
Image render(const SceneSpec& scene, const IlluminationPattern& pattern);

// The no-contact view: the zero-indentation variant of the scene averaged
// over 100 seeded noise draws.
Image render_background(const SceneSpec& scene, const IlluminationPattern& pattern);

}  // namespace lumifuse
