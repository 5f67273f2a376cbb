#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "lumifuse/image.hpp"
#include "lumifuse/pattern.hpp"

namespace lumifuse {

// One object's captures indexed by illumination pattern, each paired with
// the no-contact background taken under the same pattern. All images in a
// set share one shape.
struct CaptureSet {
    std::string object_id;
    std::map<IlluminationPattern, Image> captures;
    std::map<IlluminationPattern, Image> backgrounds;

    // Free-form manifest extras: scene spec for simulated data, capture
    // timestamps for real data. Round-trips through export/load untouched.
    nlohmann::json metadata = nlohmann::json::object();

    bool operator==(const CaptureSet&) const = default;
};

// Throws std::invalid_argument when a capture lacks its background or the
// images disagree on shape.
void validate_capture_set(const CaptureSet& set);

}  // namespace lumifuse
