#include "lumifuse/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "lumifuse/errors.hpp"
#include "lumifuse/png_io.hpp"

namespace lumifuse {

namespace fs = std::filesystem;

void validate_capture_set(const CaptureSet& set) {
    const Image* reference = nullptr;
    for (const auto& [pattern, img] : set.captures) {
        if (!set.backgrounds.contains(pattern)) {
            throw std::invalid_argument("capture set '" + set.object_id +
                                        "' is missing the background for pattern " +
                                        pattern_to_string(pattern));
        }
        if (!reference) reference = &img;
        if (!img.same_shape(*reference)) {
            throw std::invalid_argument("capture set '" + set.object_id +
                                        "' mixes image shapes");
        }
    }
    for (const auto& [pattern, img] : set.backgrounds) {
        if (reference && !img.same_shape(*reference)) {
            throw std::invalid_argument("capture set '" + set.object_id +
                                        "' mixes image shapes");
        }
    }
}

Image average_backgrounds(const std::vector<Image>& frames) {
    if (frames.empty()) {
        throw std::invalid_argument("average_backgrounds: empty frame list");
    }
    Raster acc = make_raster(frames[0].width, frames[0].height, frames[0].channels);
    for (const Image& frame : frames) {
        if (!frame.same_shape(frames[0])) {
            throw std::invalid_argument("average_backgrounds: frame dimensions differ");
        }
        for (size_t i = 0; i < acc.data.size(); ++i) {
            acc.data[i] += frame.data[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(frames.size());
    for (double& v : acc.data) v *= inv;
    return to_image_clamped(acc);
}

namespace {

IlluminationPattern pattern_from_png_name(const fs::path& file) {
    if (file.extension() != ".png") {
        throw DatasetError(DatasetError::Code::bad_filename,
                           "unexpected file '" + file.string() + "' (want r<r>_g<g>_b<b>.png)");
    }
    try {
        return parse_pattern_filename(file.stem().string());
    } catch (const std::invalid_argument& e) {
        throw DatasetError(DatasetError::Code::bad_filename,
                           "bad capture filename '" + file.string() + "': " + e.what());
    }
}

std::map<IlluminationPattern, Image> load_pattern_dir(const fs::path& dir) {
    std::map<IlluminationPattern, Image> images;
    if (!fs::is_directory(dir)) return images;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const IlluminationPattern pattern = pattern_from_png_name(entry.path().filename());
        images.emplace(pattern, load_png(entry.path()));
    }
    return images;
}

}  // namespace

CaptureSet load_capture_set(const fs::path& object_dir) {
    if (!fs::is_directory(object_dir)) {
        throw IoError("capture set directory '" + object_dir.string() + "' does not exist");
    }
    const fs::path manifest_path = object_dir / "manifest.json";
    std::ifstream manifest_in(manifest_path);
    if (!manifest_in) {
        throw DatasetError(DatasetError::Code::missing_manifest,
                           "missing manifest '" + manifest_path.string() + "'");
    }
    nlohmann::json manifest;
    try {
        manifest_in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("bad manifest '" + manifest_path.string() + "': " + e.what());
    }

    CaptureSet set;
    set.object_id = manifest.value("object_id", object_dir.filename().string());
    set.metadata = manifest.value("metadata", nlohmann::json::object());
    set.captures = load_pattern_dir(object_dir / "captures");
    set.backgrounds = load_pattern_dir(object_dir / "background");

    const Image* reference = nullptr;
    for (const auto& [pattern, img] : set.captures) {
        if (!set.backgrounds.contains(pattern)) {
            throw DatasetError(DatasetError::Code::missing_background,
                               "capture " + pattern_to_string(pattern) + " of '" +
                                   set.object_id + "' has no background image");
        }
        if (!reference) reference = &img;
        if (!img.same_shape(*reference) ||
            !set.backgrounds.at(pattern).same_shape(*reference)) {
            throw DatasetError(DatasetError::Code::dim_mismatch,
                               "images of '" + set.object_id + "' disagree on shape");
        }
    }
    return set;
}

void export_capture_set(const CaptureSet& set, const fs::path& object_dir) {
    validate_capture_set(set);
    std::error_code ec;
    fs::create_directories(object_dir / "captures", ec);
    fs::create_directories(object_dir / "background", ec);
    if (ec) {
        throw IoError("cannot create '" + object_dir.string() + "': " + ec.message());
    }

    for (const auto& [pattern, img] : set.captures) {
        save_png(img, object_dir / "captures" / (pattern_to_filename(pattern) + ".png"));
    }
    for (const auto& [pattern, img] : set.backgrounds) {
        save_png(img, object_dir / "background" / (pattern_to_filename(pattern) + ".png"));
    }

    nlohmann::json patterns = nlohmann::json::array();
    for (const auto& [pattern, img] : set.captures) {
        patterns.push_back({pattern.r, pattern.g, pattern.b});
    }
    const nlohmann::json manifest = {{"object_id", set.object_id},
                                     {"patterns", patterns},
                                     {"metadata", set.metadata}};
    std::ofstream out(object_dir / "manifest.json");
    if (!out) {
        throw IoError("cannot write manifest in '" + object_dir.string() + "'");
    }
    out << manifest.dump(2) << '\n';
}

std::vector<std::string> list_objects(const fs::path& dataset_root) {
    std::vector<std::string> ids;
    if (!fs::is_directory(dataset_root)) {
        throw IoError("dataset root '" + dataset_root.string() + "' does not exist");
    }
    for (const auto& entry : fs::directory_iterator(dataset_root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) {
            ids.push_back(entry.path().filename().string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace lumifuse
