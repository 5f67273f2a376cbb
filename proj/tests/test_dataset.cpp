#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "lumifuse/dataset.hpp"
#include "lumifuse/errors.hpp"
#include "lumifuse/png_io.hpp"
#include "lumifuse/simulator.hpp"

using namespace lumifuse;
namespace fs = std::filesystem;

namespace {

CaptureSet simulated_set(const std::string& id, const std::vector<IlluminationPattern>& patterns,
                         uint64_t seed) {
    SceneSpec scene;
    scene.shape = SceneShape::Sphere;
    scene.width = 32;
    scene.height = 24;
    scene.seed = seed;
    CaptureSet set;
    set.object_id = id;
    set.metadata = nlohmann::json{{"scene", scene}};
    for (const IlluminationPattern& p : patterns) {
        set.captures.emplace(p, render(scene, p));
        set.backgrounds.emplace(p, render_background(scene, p));
    }
    return set;
}

}  // namespace

TEST_CASE("average_backgrounds basics") {
    const Image img = testutil::random_image(4, 6, 5, 3);
    CHECK(average_backgrounds({img}) == img);

    const Image zeros = make_image(4, 4, 1, 0.0f);
    const Image ones = make_image(4, 4, 1, 1.0f);
    const Image mean = average_backgrounds({zeros, ones});
    for (float v : mean.data) CHECK(v == 0.5f);

    CHECK_THROWS_AS(average_backgrounds({}), std::invalid_argument);
    CHECK_THROWS_AS(average_backgrounds({zeros, make_image(4, 5, 1)}), std::invalid_argument);
}

TEST_CASE("average_backgrounds is permutation-invariant") {
    std::vector<Image> frames;
    for (uint64_t s = 0; s < 5; ++s) frames.push_back(testutil::random_image(s, 7, 6, 1));
    const Image forward = average_backgrounds(frames);
    std::reverse(frames.begin(), frames.end());
    const Image backward = average_backgrounds(frames);
    CHECK(rms_difference(forward, backward) <= 1e-7);
}

TEST_CASE("averaging noisy frames lands near the clean value") {
    // 100 frames of constant 0.4 with sigma-0.05 noise.
    std::vector<Image> frames;
    for (int f = 0; f < 100; ++f) {
        Image frame = make_image(12, 12, 1);
        for (size_t i = 0; i < frame.data.size(); ++i) {
            const double v = 0.4 + 0.05 * gaussian01(900 + f, i);
            frame.data[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
        frames.push_back(std::move(frame));
    }
    const Image mean = average_backgrounds(frames);
    for (float v : mean.data) {
        CHECK(std::abs(v - 0.4f) <= 5.0f * 0.005f);
    }
}

TEST_CASE("export then load returns an equal capture set") {
    testutil::TempDir dir("roundtrip");
    const CaptureSet set = simulated_set(
        "ball", {make_pattern(15, 15, 15), make_pattern(0, 15, 0)}, 11);
    export_capture_set(set, dir.path() / "ball");
    const CaptureSet back = load_capture_set(dir.path() / "ball");
    CHECK(back.object_id == set.object_id);
    CHECK(back.captures == set.captures);
    CHECK(back.backgrounds == set.backgrounds);
    CHECK(back.metadata == set.metadata);
}

TEST_CASE("empty capture set exports a valid directory") {
    testutil::TempDir dir("empty");
    CaptureSet set;
    set.object_id = "nothing";
    export_capture_set(set, dir.path() / "nothing");
    const CaptureSet back = load_capture_set(dir.path() / "nothing");
    CHECK(back.object_id == "nothing");
    CHECK(back.captures.empty());
    CHECK(back.backgrounds.empty());
}

TEST_CASE("a 23-pattern object exports 46 PNGs and a manifest") {
    testutil::TempDir dir("full23");
    std::vector<IlluminationPattern> patterns;
    for (int i = 0; i < 23; ++i) {
        patterns.push_back(make_pattern(i % 16, (i * 3) % 16, i / 2));
    }
    REQUIRE(patterns.size() == 23);
    const CaptureSet set = simulated_set("grid", patterns, 77);
    export_capture_set(set, dir.path() / "grid");

    size_t pngs = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "grid")) {
        if (entry.path().extension() == ".png") ++pngs;
    }
    CHECK(pngs == 46);
    CHECK(fs::exists(dir.path() / "grid" / "manifest.json"));

    const CaptureSet back = load_capture_set(dir.path() / "grid");
    CHECK(back.captures == set.captures);
    CHECK(back.backgrounds == set.backgrounds);
}

TEST_CASE("loading reports distinct failures") {
    testutil::TempDir dir("errors");
    const CaptureSet set = simulated_set("obj", {make_pattern(15, 15, 15)}, 5);

    SUBCASE("missing background") {
        export_capture_set(set, dir.path() / "obj");
        fs::remove(dir.path() / "obj" / "background" / "r15_g15_b15.png");
        try {
            load_capture_set(dir.path() / "obj");
            FAIL("expected DatasetError");
        } catch (const DatasetError& e) {
            CHECK(e.code == DatasetError::Code::missing_background);
        }
    }
    SUBCASE("malformed capture filename") {
        export_capture_set(set, dir.path() / "obj");
        fs::rename(dir.path() / "obj" / "captures" / "r15_g15_b15.png",
                   dir.path() / "obj" / "captures" / "red_green_blue.png");
        try {
            load_capture_set(dir.path() / "obj");
            FAIL("expected DatasetError");
        } catch (const DatasetError& e) {
            CHECK(e.code == DatasetError::Code::bad_filename);
        }
    }
    SUBCASE("dimension mismatch across files") {
        export_capture_set(set, dir.path() / "obj");
        save_png(make_image(8, 8, 3, 0.5f),
                 dir.path() / "obj" / "background" / "r15_g15_b15.png");
        try {
            load_capture_set(dir.path() / "obj");
            FAIL("expected DatasetError");
        } catch (const DatasetError& e) {
            CHECK(e.code == DatasetError::Code::dim_mismatch);
        }
    }
    SUBCASE("missing manifest") {
        export_capture_set(set, dir.path() / "obj");
        fs::remove(dir.path() / "obj" / "manifest.json");
        try {
            load_capture_set(dir.path() / "obj");
            FAIL("expected DatasetError");
        } catch (const DatasetError& e) {
            CHECK(e.code == DatasetError::Code::missing_manifest);
        }
    }
    SUBCASE("missing directory") {
        CHECK_THROWS_AS(load_capture_set(dir.path() / "absent"), IoError);
    }
}

TEST_CASE("validate_capture_set enforces pairing and uniform shape") {
    CaptureSet set;
    set.object_id = "bad";
    set.captures.emplace(make_pattern(1, 2, 3), make_image(8, 8, 3));
    CHECK_THROWS_AS(validate_capture_set(set), std::invalid_argument);

    set.backgrounds.emplace(make_pattern(1, 2, 3), make_image(8, 8, 3));
    CHECK_NOTHROW(validate_capture_set(set));

    set.captures.emplace(make_pattern(4, 5, 6), make_image(4, 4, 3));
    set.backgrounds.emplace(make_pattern(4, 5, 6), make_image(4, 4, 3));
    CHECK_THROWS_AS(validate_capture_set(set), std::invalid_argument);
}

TEST_CASE("list_objects finds exported sets in sorted order") {
    testutil::TempDir dir("listing");
    export_capture_set(simulated_set("zebra", {make_pattern(1, 1, 1)}, 1),
                       dir.path() / "zebra");
    export_capture_set(simulated_set("apple", {make_pattern(1, 1, 1)}, 2),
                       dir.path() / "apple");
    fs::create_directories(dir.path() / "not_an_object");

    const std::vector<std::string> ids = list_objects(dir.path());
    REQUIRE(ids.size() == 2);
    CHECK(ids[0] == "apple");
    CHECK(ids[1] == "zebra");
}
