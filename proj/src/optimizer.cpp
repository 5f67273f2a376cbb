#include "lumifuse/optimizer.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lumifuse/parallel.hpp"

namespace lumifuse {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find(',') == std::string::npos && field.find('"') == std::string::npos) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

const Image& capture_for(const CaptureSet& set, const IlluminationPattern& pattern) {
    const auto it = set.captures.find(pattern);
    if (it == set.captures.end()) {
        throw std::invalid_argument("pattern " + pattern_to_string(pattern) +
                                    " not present in capture set '" + set.object_id + "'");
    }
    return it->second;
}

// Channel-sum expects the red-lit/green-lit/blue-lit captures in that
// order. From an unordered selection, each slot takes the pattern with the
// strongest matching LED (ties go to the lexicographically larger tuple,
// i.e. the brighter remaining components).
std::vector<IlluminationPattern> channel_sum_order(std::vector<IlluminationPattern> patterns) {
    const auto pick = [&patterns](auto component) {
        return *std::max_element(patterns.begin(), patterns.end(),
                                 [&](const auto& a, const auto& b) {
                                     if (component(a) != component(b)) {
                                         return component(a) < component(b);
                                     }
                                     return a < b;
                                 });
    };
    return {pick([](const IlluminationPattern& p) { return p.r; }),
            pick([](const IlluminationPattern& p) { return p.g; }),
            pick([](const IlluminationPattern& p) { return p.b; })};
}

Image fuse_selection(const std::vector<IlluminationPattern>& patterns,
                     const FusionMethod& method,
                     const std::map<IlluminationPattern, Image>& images) {
    std::vector<IlluminationPattern> order = patterns;
    if (method.kind == FusionKind::ChannelSum) {
        order = channel_sum_order(order);
    }
    std::vector<Image> inputs;
    inputs.reserve(order.size());
    for (const IlluminationPattern& p : order) {
        inputs.push_back(images.at(p));
    }
    return fuse(method, inputs);
}

// Subset enumeration in lexicographic index order, sizes 1..max_size.
void for_each_subset(size_t n, int max_size,
                     const std::function<void(const std::vector<size_t>&)>& visit) {
    std::vector<size_t> indices;
    const std::function<void(size_t)> recurse = [&](size_t start) {
        if (!indices.empty()) visit(indices);
        if (static_cast<int>(indices.size()) == max_size) return;
        for (size_t i = start; i < n; ++i) {
            indices.push_back(i);
            recurse(i + 1);
            indices.pop_back();
        }
    };
    recurse(0);
}

}  // namespace

std::string metric_mode_name(MetricMode mode) {
    switch (mode) {
        case MetricMode::Sharpness: return "sharpness";
        case MetricMode::Contrast: return "contrast";
        case MetricMode::BackgroundDiff: return "background_diff";
        case MetricMode::Intersection: return "intersection";
    }
    return "unknown";
}

MetricMode parse_metric_mode(const std::string& name) {
    if (name == "sharpness") return MetricMode::Sharpness;
    if (name == "contrast") return MetricMode::Contrast;
    if (name == "background_diff") return MetricMode::BackgroundDiff;
    if (name == "intersection") return MetricMode::Intersection;
    throw std::invalid_argument("unknown metric '" + name +
                                "' (expected sharpness, contrast, background_diff, "
                                "intersection)");
}

double metric_value(const MetricReport& report, MetricMode mode) {
    switch (mode) {
        case MetricMode::Sharpness: return report.sharpness;
        case MetricMode::Contrast: return report.rms_contrast;
        case MetricMode::BackgroundDiff: return report.background_difference;
        case MetricMode::Intersection: break;
    }
    throw std::invalid_argument("intersection mode has no scalar value");
}

void validate_search_config(const SearchConfig& cfg) {
    if (cfg.patterns.empty()) {
        throw std::invalid_argument("search config: empty pattern list");
    }
    if (cfg.methods.empty()) {
        throw std::invalid_argument("search config: empty method list");
    }
    if (cfg.max_combo_size < 1 ||
        cfg.max_combo_size > static_cast<int>(cfg.patterns.size())) {
        throw std::invalid_argument("search config: max_combo_size must be in [1, " +
                                    std::to_string(cfg.patterns.size()) + "]");
    }
    std::vector<IlluminationPattern> sorted = cfg.patterns;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("search config: duplicate pattern in list");
    }
}

FusedPair fuse_combination(const CaptureSet& set,
                           const std::vector<IlluminationPattern>& patterns,
                           const FusionMethod& method) {
    if (patterns.empty()) {
        throw std::invalid_argument("fuse_combination: empty pattern list");
    }
    for (const IlluminationPattern& p : patterns) {
        capture_for(set, p);
    }
    if (patterns.size() == 1) {
        const IlluminationPattern& p = patterns.front();
        return FusedPair{set.captures.at(p), set.backgrounds.at(p)};
    }
    const int n = static_cast<int>(patterns.size());
    if (n < method_min_inputs(method) || n > method_max_inputs(method)) {
        throw std::invalid_argument("fusion method '" + method_name(method) + "' cannot take " +
                                    std::to_string(n) + " patterns");
    }
    return FusedPair{fuse_selection(patterns, method, set.captures),
                     fuse_selection(patterns, method, set.backgrounds)};
}

MetricReport evaluate_combination(const CaptureSet& set,
                                  const std::vector<IlluminationPattern>& patterns,
                                  const FusionMethod& method) {
    const FusedPair pair = fuse_combination(set, patterns, method);
    return evaluate(pair.image, pair.background);
}

std::vector<SearchEntry> exhaustive_search(const CaptureSet& set, const SearchConfig& cfg) {
    validate_search_config(cfg);
    if (cfg.metric_mode == MetricMode::Intersection) {
        throw std::invalid_argument(
            "exhaustive_search ranks by a scalar metric; use intersection_search");
    }

    std::vector<IlluminationPattern> sorted = cfg.patterns;
    std::sort(sorted.begin(), sorted.end());

    std::vector<SearchEntry> jobs;
    for_each_subset(sorted.size(), cfg.max_combo_size, [&](const std::vector<size_t>& idx) {
        std::vector<IlluminationPattern> subset;
        subset.reserve(idx.size());
        for (size_t i : idx) subset.push_back(sorted[i]);
        for (size_t m = 0; m < cfg.methods.size(); ++m) {
            const FusionMethod& method = cfg.methods[m];
            const int n = static_cast<int>(subset.size());
            if (n > 1 && (n < method_min_inputs(method) || n > method_max_inputs(method))) {
                continue;  // method cannot take this subset size
            }
            jobs.push_back(SearchEntry{subset, method, static_cast<int>(m), {}});
        }
    });

    parallel_for(jobs.size(), [&](size_t i) {
        jobs[i].report = evaluate_combination(set, jobs[i].patterns, jobs[i].method);
    });

    const MetricMode mode = cfg.metric_mode;
    std::stable_sort(jobs.begin(), jobs.end(), [mode](const SearchEntry& a, const SearchEntry& b) {
        const double sa = metric_value(a.report, mode);
        const double sb = metric_value(b.report, mode);
        if (sa != sb) return sa > sb;
        if (a.patterns.size() != b.patterns.size()) {
            return a.patterns.size() < b.patterns.size();
        }
        if (a.patterns != b.patterns) return a.patterns < b.patterns;
        return a.method_index < b.method_index;
    });
    return jobs;
}

std::set<PatternsMethod> top_pairs(const std::vector<SearchEntry>& ranked, size_t top_k) {
    std::set<PatternsMethod> pairs;
    for (size_t i = 0; i < ranked.size() && i < top_k; ++i) {
        pairs.insert({ranked[i].patterns, method_name(ranked[i].method)});
    }
    return pairs;
}

std::set<PatternsMethod> intersect_best(
    const std::map<std::string, std::set<PatternsMethod>>& per_metric) {
    if (per_metric.empty()) {
        throw std::invalid_argument("intersect_best: empty metric map");
    }
    std::set<PatternsMethod> result = per_metric.begin()->second;
    for (auto it = std::next(per_metric.begin()); it != per_metric.end(); ++it) {
        std::set<PatternsMethod> kept;
        std::set_intersection(result.begin(), result.end(), it->second.begin(),
                              it->second.end(), std::inserter(kept, kept.begin()));
        result = std::move(kept);
    }
    return result;
}

std::set<PatternsMethod> intersection_search(const CaptureSet& set, SearchConfig cfg,
                                             size_t top_k) {
    std::map<std::string, std::set<PatternsMethod>> per_metric;
    for (MetricMode mode :
         {MetricMode::Sharpness, MetricMode::Contrast, MetricMode::BackgroundDiff}) {
        cfg.metric_mode = mode;
        per_metric[metric_mode_name(mode)] = top_pairs(exhaustive_search(set, cfg), top_k);
    }
    return intersect_best(per_metric);
}

SequenceResult greedy_sequence(const CaptureSet& set,
                               const std::vector<IlluminationPattern>& patterns,
                               const FusionMethod& method, MetricMode metric, int max_len,
                               bool allow_repeats) {
    if (patterns.empty()) {
        throw std::invalid_argument("greedy_sequence: empty pattern list");
    }
    if (metric == MetricMode::Intersection) {
        throw std::invalid_argument("greedy_sequence needs a scalar metric");
    }
    if (max_len < 1 || max_len > static_cast<int>(patterns.size())) {
        throw std::invalid_argument("greedy_sequence: max_len must be in [1, " +
                                    std::to_string(patterns.size()) + "]");
    }
    // Growing prefixes hit every size in 2..max_len, so fixed-arity methods
    // cannot drive the sequence.
    if (max_len > 1 &&
        (method_min_inputs(method) > 2 || method_max_inputs(method) < max_len)) {
        throw std::invalid_argument("greedy_sequence: method '" + method_name(method) +
                                    "' cannot fuse growing prefixes");
    }

    std::vector<IlluminationPattern> candidates = patterns;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    SequenceResult result;
    for (int step = 0; step < max_len; ++step) {
        bool found = false;
        IlluminationPattern best_pattern{};
        MetricReport best_report{};
        double best_score = 0.0;

        // Candidates are visited in ascending order, and only a strictly
        // better score replaces the incumbent; ties keep the smaller tuple.
        std::vector<std::pair<IlluminationPattern, MetricReport>> scored(candidates.size());
        std::vector<char> eligible(candidates.size(), 0);
        for (size_t i = 0; i < candidates.size(); ++i) {
            const IlluminationPattern& candidate = candidates[i];
            if (!allow_repeats &&
                std::find(result.sequence.begin(), result.sequence.end(), candidate) !=
                    result.sequence.end()) {
                continue;
            }
            eligible[i] = 1;
        }
        parallel_for(candidates.size(), [&](size_t i) {
            if (!eligible[i]) return;
            std::vector<IlluminationPattern> trial = result.sequence;
            trial.push_back(candidates[i]);
            scored[i] = {candidates[i], evaluate_combination(set, trial, method)};
        });
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (!eligible[i]) continue;
            const double score = metric_value(scored[i].second, metric);
            if (!found || score > best_score) {
                found = true;
                best_pattern = scored[i].first;
                best_report = scored[i].second;
                best_score = score;
            }
        }
        if (!found) break;  // no candidates left (repeats disabled)

        result.sequence.push_back(best_pattern);
        result.reports.push_back(best_report);
        result.scores.push_back(best_score);
    }

    result.best_n = 1;
    for (size_t i = 1; i < result.scores.size(); ++i) {
        if (result.scores[i] > result.scores[result.best_n - 1]) {
            result.best_n = static_cast<int>(i) + 1;
        }
    }
    return result;
}

double effective_frame_rate(int num_patterns, double inter_frame_seconds) {
    if (num_patterns < 1) {
        throw std::invalid_argument("effective_frame_rate: need at least one pattern");
    }
    if (!(inter_frame_seconds > 0.0)) {
        throw std::invalid_argument("effective_frame_rate: inter-frame time must be > 0");
    }
    return 1.0 / (num_patterns * inter_frame_seconds);
}

std::vector<IlluminationPattern> preset_patterns(const std::string& name) {
    if (name == "grid-0-1-5-15") {
        const int steps[4] = {0, 1, 5, 15};
        std::vector<IlluminationPattern> grid;
        grid.reserve(64);
        for (int r : steps) {
            for (int g : steps) {
                for (int b : steps) {
                    grid.push_back({r, g, b});
                }
            }
        }
        return grid;
    }
    if (name == "paper-23-placeholder") {
        return {
            {15, 15, 15}, {15, 0, 0},  {0, 15, 0},  {0, 0, 15},  {15, 15, 0},
            {15, 0, 15},  {0, 15, 15}, {5, 5, 5},   {10, 10, 10}, {15, 10, 5},
            {0, 10, 3},   {5, 0, 0},   {0, 5, 0},   {0, 0, 5},   {1, 1, 1},
            {15, 5, 1},   {1, 5, 15},  {5, 15, 5},  {10, 5, 0},  {0, 5, 10},
            {15, 1, 1},   {1, 15, 1},  {3, 10, 0},
        };
    }
    throw std::invalid_argument("unknown pattern preset '" + name + "'");
}

void write_search_csv(std::ostream& out, const std::string& object_id,
                      const std::vector<SearchEntry>& entries, bool header) {
    if (header) {
        out << "object_id,patterns,method,sharpness,rms_contrast,background_diff,rank\n";
    }
    for (size_t i = 0; i < entries.size(); ++i) {
        const SearchEntry& e = entries[i];
        out << csv_quote(object_id) << ',' << csv_quote(pattern_list_to_string(e.patterns))
            << ',' << method_name(e.method) << ',' << format_double(e.report.sharpness) << ','
            << format_double(e.report.rms_contrast) << ','
            << format_double(e.report.background_difference) << ',' << (i + 1) << '\n';
    }
}

void write_greedy_csv(std::ostream& out, const std::string& object_id,
                      const SequenceResult& result, bool header) {
    if (header) {
        out << "object_id,n,pattern,patterns,score,sharpness,rms_contrast,"
               "background_diff,best_n\n";
    }
    std::vector<IlluminationPattern> prefix;
    for (size_t i = 0; i < result.sequence.size(); ++i) {
        prefix.push_back(result.sequence[i]);
        out << csv_quote(object_id) << ',' << (i + 1) << ','
            << csv_quote(pattern_to_string(result.sequence[i])) << ','
            << csv_quote(pattern_list_to_string(prefix)) << ','
            << format_double(result.scores[i]) << ','
            << format_double(result.reports[i].sharpness) << ','
            << format_double(result.reports[i].rms_contrast) << ','
            << format_double(result.reports[i].background_difference) << ',' << result.best_n
            << '\n';
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace lumifuse
