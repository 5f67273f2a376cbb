#include "lumifuse/pattern.hpp"

#include <charconv>
#include <stdexcept>

namespace lumifuse {

namespace {

int parse_component(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad pattern component '" + std::string(text) + "' in " +
                                    std::string(what));
    }
    return value;
}

}  // namespace

void validate_pattern(const IlluminationPattern& p) {
    for (int v : {p.r, p.g, p.b}) {
        if (v < 0 || v > kLedMaxIntensity) {
            throw std::invalid_argument("LED intensity " + std::to_string(v) +
                                        " outside [0," + std::to_string(kLedMaxIntensity) + "]");
        }
    }
}

IlluminationPattern make_pattern(int r, int g, int b) {
    IlluminationPattern p{r, g, b};
    validate_pattern(p);
    return p;
}

std::string pattern_to_string(const IlluminationPattern& p) {
    return std::to_string(p.r) + "," + std::to_string(p.g) + "," + std::to_string(p.b);
}

std::string pattern_to_filename(const IlluminationPattern& p) {
    return "r" + std::to_string(p.r) + "_g" + std::to_string(p.g) + "_b" + std::to_string(p.b);
}

IlluminationPattern parse_pattern(const std::string& text) {
    const size_t c1 = text.find(',');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        text.find(',', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("pattern must be 'r,g,b', got '" + text + "'");
    }
    std::string_view view(text);
    return make_pattern(parse_component(view.substr(0, c1), text),
                        parse_component(view.substr(c1 + 1, c2 - c1 - 1), text),
                        parse_component(view.substr(c2 + 1), text));
}

IlluminationPattern parse_pattern_filename(const std::string& stem) {
    const size_t g = stem.find("_g");
    const size_t b = stem.find("_b");
    if (stem.empty() || stem[0] != 'r' || g == std::string::npos || b == std::string::npos ||
        b < g) {
        throw std::invalid_argument("pattern filename must be 'r<r>_g<g>_b<b>', got '" + stem +
                                    "'");
    }
    std::string_view view(stem);
    return make_pattern(parse_component(view.substr(1, g - 1), stem),
                        parse_component(view.substr(g + 2, b - g - 2), stem),
                        parse_component(view.substr(b + 2), stem));
}

std::vector<IlluminationPattern> parse_pattern_list(const std::string& text) {
    std::vector<IlluminationPattern> patterns;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        if (!item.empty()) patterns.push_back(parse_pattern(item));
        start = end + 1;
    }
    if (patterns.empty()) {
        throw std::invalid_argument("empty pattern list");
    }
    return patterns;
}

std::string pattern_list_to_string(const std::vector<IlluminationPattern>& patterns) {
    std::string out;
    for (size_t i = 0; i < patterns.size(); ++i) {
        if (i) out += ';';
        out += pattern_to_string(patterns[i]);
    }
    return out;
}

}  // namespace lumifuse
