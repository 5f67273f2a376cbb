#include "lumifuse/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "lumifuse/errors.hpp"

namespace lumifuse {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on '" + path.string() + "'");
    }
    return bytes;
}

}  // namespace

Image load_png(const std::filesystem::path& path) {
    const std::vector<unsigned char> bytes = read_file(path);

    // Signature plus the IHDR chunk, which is required to come first.
    if (bytes.size() < 33 || std::memcmp(bytes.data(), kPngSignature, 8) != 0 ||
        std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
        throw FormatError("'" + path.string() + "' is not a PNG file");
    }
    const int bit_depth = bytes[24];
    const int color_type = bytes[25];
    if (bit_depth != 8) {
        throw UnsupportedError("'" + path.string() + "': unsupported bit depth " +
                               std::to_string(bit_depth) + " (only 8-bit handled)");
    }
    if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
        throw UnsupportedError("'" + path.string() + "': unsupported color type " +
                               std::to_string(color_type) + " (only gray and RGB handled)");
    }
    const int channels = color_type == PNG_COLOR_TYPE_GRAY ? 1 : 3;

    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        throw FormatError("'" + path.string() + "': " + png.message);
    }
    png.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

    std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, pixels.data(), 0, nullptr)) {
        std::string message = png.message;
        png_image_free(&png);
        throw FormatError("'" + path.string() + "': " + message);
    }

    Image img;
    img.width = static_cast<int>(png.width);
    img.height = static_cast<int>(png.height);
    img.channels = channels;
    img.data.resize(pixels.size());
    for (size_t i = 0; i < pixels.size(); ++i) {
        img.data[i] = static_cast<float>(pixels[i]) / 255.0f;
    }
    return img;
}

void save_png(const Image& img, const std::filesystem::path& path) {
    validate_image(img);
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        throw IoError("parent directory '" + parent.string() + "' does not exist");
    }

    std::vector<unsigned char> pixels(img.data.size());
    for (size_t i = 0; i < img.data.size(); ++i) {
        const double scaled = std::round(static_cast<double>(img.data[i]) * 255.0);
        pixels[i] = static_cast<unsigned char>(std::clamp(scaled, 0.0, 255.0));
    }

    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(img.width);
    png.height = static_cast<png_uint_32>(img.height);
    png.format = img.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

    if (!png_image_write_to_file(&png, path.string().c_str(), 0, pixels.data(), 0, nullptr)) {
        throw IoError("failed to write '" + path.string() + "': " + png.message);
    }
}

}  // namespace lumifuse
