#pragma once

#include <filesystem>

#include "lumifuse/image.hpp"

namespace lumifuse {

// 8-bit grayscale or RGB PNG only. Bytes map to samples by v/255 on load
// and round(v*255) on save, so images whose samples are exact multiples of
// 1/255 round-trip bit-exactly.
//
// Throws IoError on filesystem problems, FormatError on malformed files,
// UnsupportedError on valid PNGs outside the 8-bit gray/RGB subset.
Image load_png(const std::filesystem::path& path);
void save_png(const Image& img, const std::filesystem::path& path);

}  // namespace lumifuse
