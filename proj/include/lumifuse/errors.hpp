#pragma once

#include <stdexcept>
#include <string>

namespace lumifuse {

// Failure talking to the filesystem (missing file, unwritable directory).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File exists but its contents are not valid for the expected format.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Valid file in a variant this library deliberately does not handle
// (16-bit PNG, palette images, ...).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural problem in an on-disk capture set.
struct DatasetError : std::runtime_error {
    enum class Code {
        missing_background,
        bad_filename,
        dim_mismatch,
        missing_manifest,
    };

    DatasetError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}

    Code code;
};

}  // namespace lumifuse
