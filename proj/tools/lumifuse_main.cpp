// Command-line front end: simulate capture sets, fuse selections, run the
// illumination searches, and render result charts.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lumifuse/dataset.hpp"
#include "lumifuse/errors.hpp"
#include "lumifuse/optimizer.hpp"
#include "lumifuse/png_io.hpp"
#include "lumifuse/rng.hpp"
#include "lumifuse/simulator.hpp"

namespace fs = std::filesystem;
using namespace lumifuse;

namespace {

std::vector<IlluminationPattern> resolve_patterns(const std::string& spec) {
    if (spec.find(',') != std::string::npos) {
        return parse_pattern_list(spec);
    }
    return preset_patterns(spec);
}

std::vector<FusionMethod> resolve_methods(const std::string& spec) {
    std::vector<FusionMethod> methods;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) methods.push_back(parse_method(item));
    }
    if (methods.empty()) {
        throw std::invalid_argument("empty method list");
    }
    return methods;
}

struct NamedScene {
    std::string object_id;
    SceneSpec scene;
};

std::vector<NamedScene> load_scene_manifest(const fs::path& path, uint64_t cli_seed) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scene manifest '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("bad scene manifest '" + path.string() + "': " + e.what());
    }
    if (!doc.is_array() || doc.empty()) {
        throw FormatError("scene manifest must be a non-empty array of scenes");
    }
    std::vector<NamedScene> scenes;
    for (size_t i = 0; i < doc.size(); ++i) {
        NamedScene entry;
        entry.scene = doc[i].get<SceneSpec>();
        entry.object_id = doc[i].value("object_id", "scene" + std::to_string(i));
        // One CLI seed reshuffles every per-scene noise stream.
        entry.scene.seed = derive_key(cli_seed, entry.scene.seed);
        validate_scene(entry.scene);
        scenes.push_back(std::move(entry));
    }
    return scenes;
}

int run_simulate(const std::string& scenes_file, const std::string& patterns_spec,
                 const std::string& out_dir, uint64_t seed) {
    const std::vector<NamedScene> scenes = load_scene_manifest(scenes_file, seed);
    const std::vector<IlluminationPattern> patterns = resolve_patterns(patterns_spec);

    for (const NamedScene& entry : scenes) {
        CaptureSet set;
        set.object_id = entry.object_id;
        set.metadata = nlohmann::json{{"scene", entry.scene}};
        for (const IlluminationPattern& p : patterns) {
            set.captures.emplace(p, render(entry.scene, p));
            set.backgrounds.emplace(p, render_background(entry.scene, p));
        }
        const fs::path object_dir = fs::path(out_dir) / entry.object_id;
        export_capture_set(set, object_dir);
        std::cout << "wrote " << object_dir.string() << " (" << patterns.size()
                  << " patterns)\n";
    }
    return 0;
}

int run_fuse(const std::string& dataset_dir, const std::string& object_id,
             const std::string& patterns_spec, const std::string& method_name_arg,
             const std::string& out_png) {
    const CaptureSet set = load_capture_set(fs::path(dataset_dir) / object_id);
    const std::vector<IlluminationPattern> patterns = resolve_patterns(patterns_spec);
    const FusionMethod method = parse_method(method_name_arg);

    const FusedPair fused = fuse_combination(set, patterns, method);
    const fs::path out_path(out_png);
    fs::path bg_path = out_path;
    bg_path.replace_filename(out_path.stem().string() + "_background" +
                             out_path.extension().string());
    save_png(fused.image, out_path);
    save_png(fused.background, bg_path);

    const MetricReport report = evaluate(fused.image, fused.background);
    std::cout << "sharpness=" << std::setprecision(17) << report.sharpness
              << " rms_contrast=" << report.rms_contrast
              << " background_diff=" << report.background_difference << '\n';
    std::cout << "wrote " << out_path.string() << " and " << bg_path.string() << '\n';
    return 0;
}

void write_pairs_csv(const fs::path& path, const std::set<PatternsMethod>& pairs) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << "patterns,method\n";
    for (const PatternsMethod& pm : pairs) {
        out << '"' << pattern_list_to_string(pm.patterns) << "\"," << pm.method << '\n';
    }
}

int run_optimize(const std::string& dataset_dir, const std::string& mode,
                 const std::string& metric_name, int budget, const std::string& out_csv,
                 const std::string& methods_spec, const std::string& method_spec,
                 size_t top_k, bool allow_repeats) {
    const std::vector<std::string> objects = list_objects(dataset_dir);
    if (objects.empty()) {
        throw IoError("no objects found under '" + dataset_dir + "'");
    }
    const MetricMode metric = parse_metric_mode(metric_name);

    std::ofstream out(out_csv);
    if (!out) {
        throw IoError("cannot write '" + out_csv + "'");
    }
    fs::path summary_path(out_csv);
    summary_path.replace_filename(fs::path(out_csv).stem().string() + "_summary.csv");

    if (mode == "exhaustive") {
        const std::vector<FusionMethod> methods = resolve_methods(methods_spec);
        std::map<std::string, std::set<PatternsMethod>> per_object;
        bool header = true;
        for (const std::string& id : objects) {
            const CaptureSet set = load_capture_set(fs::path(dataset_dir) / id);
            SearchConfig cfg;
            for (const auto& [pattern, img] : set.captures) cfg.patterns.push_back(pattern);
            cfg.methods = methods;
            cfg.max_combo_size = budget;

            if (metric == MetricMode::Intersection) {
                // Written rows are ranked by sharpness for display; the
                // multi-metric answer is the intersection summary.
                cfg.metric_mode = MetricMode::Sharpness;
                write_search_csv(out, id, exhaustive_search(set, cfg), header);
                per_object[id] = intersection_search(set, cfg, top_k);
            } else {
                cfg.metric_mode = metric;
                const std::vector<SearchEntry> ranked = exhaustive_search(set, cfg);
                write_search_csv(out, id, ranked, header);
                per_object[id] = top_pairs(ranked, top_k);
            }
            header = false;
        }
        write_pairs_csv(summary_path, intersect_best(per_object));
    } else if (mode == "greedy") {
        if (metric == MetricMode::Intersection) {
            throw std::invalid_argument("greedy mode needs a scalar metric");
        }
        const FusionMethod method = parse_method(method_spec);
        std::ofstream summary(summary_path);
        if (!summary) {
            throw IoError("cannot write '" + summary_path.string() + "'");
        }
        summary << "object_id,best_n,best_score,sequence\n";
        bool header = true;
        for (const std::string& id : objects) {
            const CaptureSet set = load_capture_set(fs::path(dataset_dir) / id);
            std::vector<IlluminationPattern> patterns;
            for (const auto& [pattern, img] : set.captures) patterns.push_back(pattern);
            const SequenceResult result =
                greedy_sequence(set, patterns, method, metric, budget, allow_repeats);
            write_greedy_csv(out, id, result, header);
            header = false;

            const std::vector<IlluminationPattern> best_prefix(
                result.sequence.begin(), result.sequence.begin() + result.best_n);
            summary << id << ',' << result.best_n << ',' << std::setprecision(17)
                    << result.scores[result.best_n - 1] << ",\""
                    << pattern_list_to_string(best_prefix) << "\"\n";
        }
    } else {
        throw std::invalid_argument("unknown mode '" + mode +
                                    "' (expected exhaustive or greedy)");
    }
    std::cout << "wrote " << out_csv << " and " << summary_path.string() << '\n';
    return 0;
}

// A small static chart so results can be eyeballed without extra tooling.
int run_report(const std::string& in_csv, const std::string& out_svg,
               const std::string& metric_name) {
    std::ifstream in(in_csv);
    if (!in) {
        throw IoError("cannot open '" + in_csv + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("'" + in_csv + "' is empty");
    }
    const std::vector<std::string> header = split_csv_line(line);
    const bool greedy = header.size() > 1 && header[1] == "n";

    const int width = 640, height = 420, margin = 50;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
        << height << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";

    if (greedy) {
        // score-vs-n polyline per object
        std::map<std::string, std::vector<std::pair<int, double>>> curves;
        double max_score = 0.0;
        int max_n = 1;
        while (std::getline(in, line)) {
            const std::vector<std::string> f = split_csv_line(line);
            if (f.size() < 9) continue;
            const int n = std::stoi(f[1]);
            const double score = std::stod(f[4]);
            curves[f[0]].push_back({n, score});
            max_score = std::max(max_score, score);
            max_n = std::max(max_n, n);
        }
        if (curves.empty()) {
            throw FormatError("no data rows in '" + in_csv + "'");
        }
        const auto sx = [&](double n) {
            return margin + (n - 1) / std::max(1.0, max_n - 1.0) * (width - 2 * margin);
        };
        const auto sy = [&](double v) {
            return height - margin -
                   v / (max_score > 0 ? max_score : 1.0) * (height - 2 * margin);
        };
        const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
        size_t color = 0;
        for (const auto& [id, points] : curves) {
            svg << "<polyline fill='none' stroke='" << palette[color++ % 8]
                << "' stroke-width='1.5' points='";
            for (const auto& [n, score] : points) {
                svg << sx(n) << ',' << sy(score) << ' ';
            }
            svg << "'/>\n";
        }
        svg << "<line x1='" << margin << "' y1='" << height - margin << "' x2='"
            << width - margin << "' y2='" << height - margin << "' stroke='black'/>\n";
        svg << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
            << height - margin << "' stroke='black'/>\n";
        svg << "<text x='" << width / 2 << "' y='" << height - 12
            << "' text-anchor='middle' font-size='12'>images fused (n)</text>\n";
        svg << "<text x='14' y='" << height / 2 << "' font-size='12' transform='rotate(-90 14 "
            << height / 2 << ")' text-anchor='middle'>score</text>\n";
    } else {
        // top rows as bars
        int metric_col = 3;
        const std::string wanted = metric_name == "contrast" ? "rms_contrast" : metric_name;
        for (size_t i = 0; i < header.size(); ++i) {
            if (header[i] == wanted) metric_col = static_cast<int>(i);
        }
        struct Bar {
            std::string label;
            double value;
        };
        std::vector<Bar> bars;
        while (std::getline(in, line) && bars.size() < 10) {
            const std::vector<std::string> f = split_csv_line(line);
            if (f.size() < 7) continue;
            bars.push_back({f[1] + " " + f[2], std::stod(f[metric_col])});
        }
        if (bars.empty()) {
            throw FormatError("no data rows in '" + in_csv + "'");
        }
        double max_v = 0.0;
        for (const Bar& b : bars) max_v = std::max(max_v, b.value);
        const double bar_w = static_cast<double>(width - 2 * margin) / bars.size();
        for (size_t i = 0; i < bars.size(); ++i) {
            const double h = bars[i].value / (max_v > 0 ? max_v : 1.0) * (height - 2 * margin);
            svg << "<rect x='" << margin + i * bar_w + 4 << "' y='" << height - margin - h
                << "' width='" << bar_w - 8 << "' height='" << h << "' fill='#1f77b4'/>\n";
            svg << "<text x='" << margin + i * bar_w + bar_w / 2 << "' y='"
                << height - margin + 14 << "' font-size='8' text-anchor='middle'>"
                << bars[i].label << "</text>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(out_svg);
    if (!out) {
        throw IoError("cannot write '" + out_svg + "'");
    }
    out << svg.str();
    std::cout << "wrote " << out_svg << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic-illumination image fusion for tactile sensors"};
    app.require_subcommand(1);

    std::string scenes_file, patterns_spec, out_dir;
    uint64_t seed = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "render capture sets for scenes");
    simulate->add_option("--scenes", scenes_file, "scene manifest (json array)")->required();
    simulate
        ->add_option("--patterns", patterns_spec,
                     "pattern list 'r,g,b;r,g,b;...' or preset name")
        ->required();
    simulate->add_option("--out", out_dir, "output dataset directory")->required();
    simulate->add_option("--seed", seed, "global seed, combined with per-scene seeds");

    std::string dataset_dir, object_id, method_spec = "dwt", out_png;
    CLI::App* fuse_cmd = app.add_subcommand("fuse", "fuse selected captures of one object");
    fuse_cmd->add_option("--dataset", dataset_dir, "dataset root")->required();
    fuse_cmd->add_option("--object", object_id, "object id")->required();
    fuse_cmd->add_option("--patterns", patterns_spec, "pattern list")->required();
    fuse_cmd->add_option("--method", method_spec,
                         "channel-sum | brovey | laplacian[:levels] | dwt[:levels]");
    fuse_cmd->add_option("--out", out_png, "output png")->required();

    std::string mode = "exhaustive", metric = "sharpness", out_csv;
    std::string methods_spec = "channel-sum,brovey,laplacian,dwt";
    int budget = 2;
    size_t top_k = 10;
    bool allow_repeats = false;
    CLI::App* optimize = app.add_subcommand("optimize", "search patterns and methods");
    optimize->add_option("--dataset", dataset_dir, "dataset root")->required();
    optimize->add_option("--mode", mode, "exhaustive | greedy");
    optimize->add_option("--metric", metric,
                         "sharpness | contrast | background_diff | intersection");
    optimize->add_option("--budget", budget, "max combination size / sequence length")
        ->required();
    optimize->add_option("--out", out_csv, "output csv")->required();
    optimize->add_option("--methods", methods_spec, "methods for exhaustive mode");
    optimize->add_option("--method", method_spec, "method for greedy mode");
    optimize->add_option("--top-k", top_k, "pairs kept per metric for intersections");
    optimize->add_flag("--allow-repeats", allow_repeats,
                       "let greedy repeat an already-chosen pattern");

    std::string in_csv, out_svg, report_metric = "sharpness";
    CLI::App* report = app.add_subcommand("report", "render a csv as a static svg chart");
    report->add_option("--in", in_csv, "input csv from optimize")->required();
    report->add_option("--out", out_svg, "output svg")->required();
    report->add_option("--metric", report_metric, "metric column for bar charts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(scenes_file, patterns_spec, out_dir, seed);
        }
        if (fuse_cmd->parsed()) {
            return run_fuse(dataset_dir, object_id, patterns_spec, method_spec, out_png);
        }
        if (optimize->parsed()) {
            return run_optimize(dataset_dir, mode, metric, budget, out_csv, methods_spec,
                                method_spec, top_k, allow_repeats);
        }
        if (report->parsed()) {
            return run_report(in_csv, out_svg, report_metric);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
