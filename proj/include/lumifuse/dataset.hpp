#pragma once

#include <filesystem>
#include <vector>

#include "lumifuse/capture_set.hpp"

namespace lumifuse {

// Per-pixel arithmetic mean of the frames. Throws on an empty list or
// mismatched shapes.
Image average_backgrounds(const std::vector<Image>& frames);

// On-disk object layout:
//   <object_dir>/captures/r<r>_g<g>_b<b>.png
//   <object_dir>/background/r<r>_g<g>_b<b>.png
//   <object_dir>/manifest.json
//
// load and export are mutual inverses on well-formed data; PNG interchange
// is 8-bit on both sides, so round trips are pixel-exact.
CaptureSet load_capture_set(const std::filesystem::path& object_dir);
void export_capture_set(const CaptureSet& set, const std::filesystem::path& object_dir);

// Sorted object ids found under a dataset root (one subdirectory per object).
std::vector<std::string> list_objects(const std::filesystem::path& dataset_root);

}  // namespace lumifuse
