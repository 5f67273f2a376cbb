#pragma once

#include <compare>
#include <string>
#include <vector>

namespace lumifuse {

// One illumination setting: LED intensity triple, each component 0..15.
struct IlluminationPattern {
    int r = 0;
    int g = 0;
    int b = 0;

    auto operator<=>(const IlluminationPattern&) const = default;
};

inline constexpr int kLedMaxIntensity = 15;

// Throws std::invalid_argument if any component is outside [0,15].
IlluminationPattern make_pattern(int r, int g, int b);
void validate_pattern(const IlluminationPattern& p);

std::string pattern_to_string(const IlluminationPattern& p);    // "15,0,3"
std::string pattern_to_filename(const IlluminationPattern& p);  // "r15_g0_b3"

IlluminationPattern parse_pattern(const std::string& text);           // "r,g,b"
IlluminationPattern parse_pattern_filename(const std::string& stem);  // "r15_g0_b3"

// Semicolon-separated list: "15,15,15;0,15,0".
std::vector<IlluminationPattern> parse_pattern_list(const std::string& text);
std::string pattern_list_to_string(const std::vector<IlluminationPattern>& patterns);

}  // namespace lumifuse
