#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lumifuse/dataset.hpp"
#include "lumifuse/optimizer.hpp"
#include "lumifuse/png_io.hpp"

using namespace lumifuse;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return LUMIFUSE_CLI_PATH; }

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args, const fs::path& scratch) {
    const fs::path log = scratch / "cli_output.txt";
    const std::string command =
        std::string(cli_path()) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(command.c_str());
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return CommandResult{WEXITSTATUS(status), buffer.str()};
}

void write_scenes(const fs::path& file, int count, double noise) {
    std::ofstream out(file);
    out << "[\n";
    const char* shapes[] = {"sphere", "edge", "ridge_grid", "text_stamp", "random_bumps"};
    for (int i = 0; i < count; ++i) {
        out << "  {\"object_id\": \"obj" << i << "\", \"shape\": \"" << shapes[i % 5]
            << "\", \"width\": 32, \"height\": 24, \"radius_px\": 8, \"period_px\": 10, "
               "\"depth\": 6, \"noise_sigma\": "
            << noise << ", \"seed\": " << 100 + i << "}";
        out << (i + 1 < count ? ",\n" : "\n");
    }
    out << "]\n";
}

std::vector<char> file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::vector<char>((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
}

size_t count_files(const fs::path& dir, const std::string& extension) {
    size_t n = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.path().extension() == extension) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("simulate writes the expected files") {
    testutil::TempDir dir("cli_sim");
    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    const CommandResult r = run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                                        " --patterns \"15,15,15;0,15,0\" --out " +
                                        (dir.path() / "data").string(),
                                    dir.path());
    REQUIRE(r.exit_code == 0);
    CHECK(count_files(dir.path() / "data" / "obj0" / "captures", ".png") == 2);
    CHECK(count_files(dir.path() / "data" / "obj0" / "background", ".png") == 2);
    CHECK(fs::exists(dir.path() / "data" / "obj0" / "manifest.json"));
}

TEST_CASE("simulate grid preset yields 64 patterns per scene") {
    testutil::TempDir dir("cli_grid");
    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    const CommandResult r = run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                                        " --patterns grid-0-1-5-15 --out " +
                                        (dir.path() / "data").string(),
                                    dir.path());
    REQUIRE(r.exit_code == 0);
    CHECK(count_files(dir.path() / "data" / "obj0" / "captures", ".png") == 64);
    CHECK(count_files(dir.path() / "data" / "obj0" / "background", ".png") == 64);
}

TEST_CASE("simulate is byte-identical across reruns with one seed") {
    testutil::TempDir dir("cli_seed");
    write_scenes(dir.path() / "scenes.json", 1, 0.02);
    const std::string base = "simulate --scenes " + (dir.path() / "scenes.json").string() +
                             " --patterns \"15,15,15;0,15,0\" --seed 9 --out ";
    REQUIRE(run_cli(base + (dir.path() / "a").string(), dir.path()).exit_code == 0);
    REQUIRE(run_cli(base + (dir.path() / "b").string(), dir.path()).exit_code == 0);

    for (const char* rel : {"obj0/captures/r15_g15_b15.png", "obj0/captures/r0_g15_b0.png",
                            "obj0/background/r15_g15_b15.png"}) {
        CHECK(file_bytes(dir.path() / "a" / rel) == file_bytes(dir.path() / "b" / rel));
    }

    // a different seed must change the noise
    const std::string reseeded = "simulate --scenes " + (dir.path() / "scenes.json").string() +
                                 " --patterns \"15,15,15\" --seed 10 --out " +
                                 (dir.path() / "c").string();
    REQUIRE(run_cli(reseeded, dir.path()).exit_code == 0);
    CHECK(file_bytes(dir.path() / "a" / "obj0/captures/r15_g15_b15.png") !=
          file_bytes(dir.path() / "c" / "obj0/captures/r15_g15_b15.png"));
}

TEST_CASE("fuse writes the image pair and reports library metrics") {
    testutil::TempDir dir("cli_fuse");
    write_scenes(dir.path() / "scenes.json", 1, 0.01);
    REQUIRE(run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                        " --patterns \"15,15,15;0,15,0\" --out " +
                        (dir.path() / "data").string(),
                    dir.path())
                .exit_code == 0);

    const CommandResult r =
        run_cli("fuse --dataset " + (dir.path() / "data").string() +
                    " --object obj0 --patterns \"15,15,15;0,15,0\" --method dwt:2 --out " +
                    (dir.path() / "fused.png").string(),
                dir.path());
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(dir.path() / "fused.png"));
    CHECK(fs::exists(dir.path() / "fused_background.png"));

    // the printed metrics must equal the library-side evaluation
    const CaptureSet set = load_capture_set(dir.path() / "data" / "obj0");
    const MetricReport want = evaluate_combination(
        set, {make_pattern(15, 15, 15), make_pattern(0, 15, 0)}, FusionMethod::dwt(2));
    std::stringstream first_line(r.output.substr(0, r.output.find('\n')));
    double got_s = -1, got_c = -1, got_d = -1;
    std::string token;
    while (first_line >> token) {
        const size_t eq = token.find('=');
        REQUIRE(eq != std::string::npos);
        const double value = std::stod(token.substr(eq + 1));
        if (token.starts_with("sharpness")) got_s = value;
        if (token.starts_with("rms_contrast")) got_c = value;
        if (token.starts_with("background_diff")) got_d = value;
    }
    CHECK(got_s == doctest::Approx(want.sharpness).epsilon(1e-12));
    CHECK(got_c == doctest::Approx(want.rms_contrast).epsilon(1e-12));
    CHECK(got_d == doctest::Approx(want.background_difference).epsilon(1e-12));

    // fused outputs quantize to 8 bits on save; loading them back works
    const Image fused = load_png(dir.path() / "fused.png");
    CHECK(fused.width == 32);
    CHECK(fused.channels == 3);
}

TEST_CASE("fuse with the wrong arity exits nonzero") {
    testutil::TempDir dir("cli_arity");
    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    REQUIRE(run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                        " --patterns \"15,15,15;0,15,0\" --out " +
                        (dir.path() / "data").string(),
                    dir.path())
                .exit_code == 0);
    const CommandResult r =
        run_cli("fuse --dataset " + (dir.path() / "data").string() +
                    " --object obj0 --patterns \"15,15,15;0,15,0\" --method channel-sum "
                    "--out " +
                    (dir.path() / "x.png").string(),
                dir.path());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("channel-sum") != std::string::npos);
}

TEST_CASE("optimize greedy writes one score row per prefix") {
    testutil::TempDir dir("cli_greedy");
    write_scenes(dir.path() / "scenes.json", 2, 0.0);
    REQUIRE(run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                        " --patterns \"15,15,15;0,15,0;15,0,0;0,0,15;1,1,1\" --out " +
                        (dir.path() / "data").string(),
                    dir.path())
                .exit_code == 0);
    const CommandResult r = run_cli(
        "optimize --dataset " + (dir.path() / "data").string() +
            " --mode greedy --metric sharpness --budget 4 --method dwt:2 --out " +
            (dir.path() / "greedy.csv").string(),
        dir.path());
    REQUIRE(r.exit_code == 0);

    std::ifstream csv(dir.path() / "greedy.csv");
    std::string line;
    std::getline(csv, line);  // header
    std::map<std::string, int> rows;
    while (std::getline(csv, line)) {
        const std::vector<std::string> fields = split_csv_line(line);
        REQUIRE(fields.size() == 9);
        rows[fields[0]]++;
    }
    REQUIRE(rows.size() == 2);
    CHECK(rows["obj0"] == 4);
    CHECK(rows["obj1"] == 4);
    CHECK(fs::exists(dir.path() / "greedy_summary.csv"));
}

TEST_CASE("optimize exhaustive with budget 1 lists raw per-pattern metrics") {
    testutil::TempDir dir("cli_exh");
    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    REQUIRE(run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                        " --patterns \"15,15,15;0,15,0;15,0,0\" --out " +
                        (dir.path() / "data").string(),
                    dir.path())
                .exit_code == 0);
    const CommandResult r =
        run_cli("optimize --dataset " + (dir.path() / "data").string() +
                    " --mode exhaustive --metric contrast --budget 1 --methods dwt --out " +
                    (dir.path() / "exh.csv").string(),
                dir.path());
    REQUIRE(r.exit_code == 0);

    const CaptureSet set = load_capture_set(dir.path() / "data" / "obj0");
    std::ifstream csv(dir.path() / "exh.csv");
    std::string line;
    std::getline(csv, line);  // header
    size_t rows = 0;
    while (std::getline(csv, line)) {
        const std::vector<std::string> fields = split_csv_line(line);
        REQUIRE(fields.size() == 7);
        const std::vector<IlluminationPattern> patterns = parse_pattern_list(fields[1]);
        REQUIRE(patterns.size() == 1);
        const MetricReport want =
            evaluate(set.captures.at(patterns[0]), set.backgrounds.at(patterns[0]));
        CHECK(std::stod(fields[3]) == doctest::Approx(want.sharpness).epsilon(1e-12));
        CHECK(std::stod(fields[4]) == doctest::Approx(want.rms_contrast).epsilon(1e-12));
        CHECK(std::stod(fields[5]) ==
              doctest::Approx(want.background_difference).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("report renders svg charts for both csv kinds") {
    testutil::TempDir dir("cli_report");
    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    REQUIRE(run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                        " --patterns \"15,15,15;0,15,0;15,0,0\" --out " +
                        (dir.path() / "data").string(),
                    dir.path())
                .exit_code == 0);
    REQUIRE(run_cli("optimize --dataset " + (dir.path() / "data").string() +
                        " --mode greedy --metric sharpness --budget 3 --method dwt --out " +
                        (dir.path() / "greedy.csv").string(),
                    dir.path())
                .exit_code == 0);
    REQUIRE(run_cli("optimize --dataset " + (dir.path() / "data").string() +
                        " --mode exhaustive --metric sharpness --budget 2 --methods dwt "
                        "--out " +
                        (dir.path() / "exh.csv").string(),
                    dir.path())
                .exit_code == 0);

    for (const char* name : {"greedy", "exh"}) {
        const CommandResult r =
            run_cli(std::string("report --in ") + (dir.path() / (name + std::string(".csv"))).string() +
                        " --out " + (dir.path() / (name + std::string(".svg"))).string(),
                    dir.path());
        REQUIRE(r.exit_code == 0);
        std::ifstream svg(dir.path() / (name + std::string(".svg")));
        std::stringstream content;
        content << svg.rdbuf();
        CHECK(content.str().find("<svg") != std::string::npos);
    }
}

TEST_CASE("bad configuration exits nonzero with a message") {
    testutil::TempDir dir("cli_bad");
    const CommandResult missing =
        run_cli("optimize --dataset " + (dir.path() / "nowhere").string() +
                    " --budget 2 --out " + (dir.path() / "x.csv").string(),
                dir.path());
    CHECK(missing.exit_code != 0);
    CHECK(missing.output.find("error") != std::string::npos);

    write_scenes(dir.path() / "scenes.json", 1, 0.0);
    const CommandResult bad_preset =
        run_cli("simulate --scenes " + (dir.path() / "scenes.json").string() +
                    " --patterns no-such-preset --out " + (dir.path() / "d").string(),
                dir.path());
    CHECK(bad_preset.exit_code != 0);
}
