#pragma once

#include <filesystem>
#include <string>

#include "lumifuse/image.hpp"
#include "lumifuse/rng.hpp"

namespace testutil {

inline lumifuse::Image random_image(uint64_t seed, int w, int h, int c) {
    lumifuse::Image img = lumifuse::make_image(w, h, c);
    for (size_t i = 0; i < img.data.size(); ++i) {
        img.data[i] = static_cast<float>(lumifuse::uniform01(seed, i));
    }
    return img;
}

// Samples restricted to exact multiples of 1/255.
inline lumifuse::Image random_quantized_image(uint64_t seed, int w, int h, int c) {
    lumifuse::Image img = lumifuse::make_image(w, h, c);
    for (size_t i = 0; i < img.data.size(); ++i) {
        const int byte = static_cast<int>(lumifuse::splitmix64(seed, i) % 256);
        img.data[i] = static_cast<float>(byte) / 255.0f;
    }
    return img;
}

// Fresh scratch directory under the system temp root, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& label) {
        root_ = std::filesystem::temp_directory_path() /
                ("lumifuse_test_" + label + "_" + std::to_string(counter_++));
        std::filesystem::remove_all(root_);
        std::filesystem::create_directories(root_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(root_, ec);
    }
    const std::filesystem::path& path() const { return root_; }

  private:
    static inline int counter_ = 0;
    std::filesystem::path root_;
};

}  // namespace testutil
