#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lumifuse/capture_set.hpp"
#include "lumifuse/fusion.hpp"
#include "lumifuse/metrics.hpp"

namespace lumifuse {

// Which quality score drives a search. Intersection is not a scalar: it
// runs the per-metric searches and intersects their top pairs.
enum class MetricMode { Sharpness, Contrast, BackgroundDiff, Intersection };

std::string metric_mode_name(MetricMode mode);
MetricMode parse_metric_mode(const std::string& name);

// Scalar modes only; throws for Intersection.
double metric_value(const MetricReport& report, MetricMode mode);

struct SearchConfig {
    std::vector<IlluminationPattern> patterns;
    std::vector<FusionMethod> methods;
    int max_combo_size = 2;
    MetricMode metric_mode = MetricMode::Sharpness;
};

void validate_search_config(const SearchConfig& cfg);

struct SearchEntry {
    std::vector<IlluminationPattern> patterns;  // ascending
    FusionMethod method;
    int method_index = 0;  // position in SearchConfig::methods, breaks ties
    MetricReport report;
};

struct FusedPair {
    Image image;
    Image background;
};

// Fuses the selected captures and fuses the matching backgrounds with the
// identical method. A single pattern skips fusion and returns the raw
// pair. Inputs are fused in list order; channel-sum picks its red/green/
// blue slots by each pattern's dominant LED.
FusedPair fuse_combination(const CaptureSet& set,
                           const std::vector<IlluminationPattern>& patterns,
                           const FusionMethod& method);

// Scores fuse_combination's output: evaluate(image, background).
MetricReport evaluate_combination(const CaptureSet& set,
                                  const std::vector<IlluminationPattern>& patterns,
                                  const FusionMethod& method);

// Every pattern subset of size 1..max_combo_size crossed with every
// method, ranked by the configured scalar metric (descending). Ties rank
// the smaller subset, then the lexicographically smaller pattern list,
// then the earlier method. Subsets whose size a fixed-arity method cannot
// take are skipped; single patterns are scored raw once per method.
// Candidate evaluations run in parallel; the ranking is identical
// regardless of worker count.
std::vector<SearchEntry> exhaustive_search(const CaptureSet& set, const SearchConfig& cfg);

struct PatternsMethod {
    std::vector<IlluminationPattern> patterns;
    std::string method;

    auto operator<=>(const PatternsMethod&) const = default;
};

std::set<PatternsMethod> top_pairs(const std::vector<SearchEntry>& ranked, size_t top_k);

// Set intersection across all entries of the map. Empty result is valid.
std::set<PatternsMethod> intersect_best(
    const std::map<std::string, std::set<PatternsMethod>>& per_metric);

// The multi-metric procedure: per scalar metric, rank exhaustively and keep
// the top_k (patterns, method) pairs, then intersect across metrics.
std::set<PatternsMethod> intersection_search(const CaptureSet& set, SearchConfig cfg,
                                             size_t top_k);

struct SequenceResult {
    std::vector<IlluminationPattern> sequence;
    std::vector<MetricReport> reports;  // after each prefix
    std::vector<double> scores;         // configured metric after each prefix
    int best_n = 1;                     // 1-based prefix length with the top score
};

// Step 1 picks the best raw capture; step m+1 appends the candidate whose
// fusion with the chosen prefix scores highest. Ties pick the
// lexicographically smallest pattern. Candidates are unused patterns
// unless allow_repeats is set.
SequenceResult greedy_sequence(const CaptureSet& set,
                               const std::vector<IlluminationPattern>& patterns,
                               const FusionMethod& method, MetricMode metric, int max_len,
                               bool allow_repeats = false);

// Capture rate when cycling n patterns with t seconds between frames.
double effective_frame_rate(int num_patterns, double inter_frame_seconds);

// Named pattern lists: "grid-0-1-5-15" (the 64-setting intensity grid) and
// "paper-23-placeholder" (a stand-in 23-setting list; the original
// experiment's exact list is not public).
std::vector<IlluminationPattern> preset_patterns(const std::string& name);

// CSV: object_id,patterns,method,sharpness,rms_contrast,background_diff,rank
void write_search_csv(std::ostream& out, const std::string& object_id,
                      const std::vector<SearchEntry>& entries, bool header = true);

// CSV: object_id,n,pattern,patterns,method,sharpness,rms_contrast,
//      background_diff,best_n
void write_greedy_csv(std::ostream& out, const std::string& object_id,
                      const SequenceResult& result, bool header = true);

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace lumifuse
