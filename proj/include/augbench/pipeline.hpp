#pragma once

#include "augbench/dataset.hpp"
#include "augbench/eval.hpp"
#include "augbench/nn.hpp"
#include "augbench/scheme.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace augbench {

/// Declarative run configuration. Training defaults follow the benchmark's
/// hyper-parameter table; jitter deltas are artifact defaults.
struct RunConfig {
    std::string dataset_root;
    std::string output_dir = ".";
    std::vector<std::string> schemes = AugmentationScheme::all_names();
    std::uint64_t seed = 0;
    int epochs = 30;
    int minibatch = 16;
    double learning_rate = 0.01;
    double momentum = 0.90;
    double l2 = 5e-4;
    int folds = kFoldCount; // the protocol is fixed at 4
    std::vector<std::string> excluded_classes = {"BACKGROUND_Google"};
    double jitter_hue = 0.05;
    double jitter_saturation = 0.15;
    double jitter_brightness = 0.15;
    double pca_scale = kDefaultPcaScale;
    int max_classes = 0;   // 0 = all; lexicographic prefix otherwise
    int max_per_class = 0; // 0 = all; path-sorted prefix otherwise
    std::string model = "paper"; // paper (3x224x224) or tiny (3x16x16)
    bool timing = true;          // when false wall_seconds is written as 0
    std::string init = "xavier"; // or "gaussian"
    bool grad_norm_clip = false;
    double clip_norm = 1.0;
};

AugmentationScheme scheme_from_config(const std::string& name, const RunConfig& config);

int model_input_res(const RunConfig& config);
std::vector<LayerSpec> architecture_from_config(const RunConfig& config);

/// Builds and trains one fold's model; returns its validation result.
FoldResult run_fold(const RunConfig& config, const LabeledDataset& ds, const FoldSplit& split,
                    const AugmentationScheme& scheme, int fold, CnnModel* trained_out = nullptr,
                    TrainTrace* trace_out = nullptr);

/// The full protocol: ingest -> trim -> fold -> per fold (inflate training
/// folds, train, score the untouched validation fold) -> aggregate.
/// Emits one JSON line per completed fold so interrupted runs stay readable.
/// A failing scheme is recorded as a failure line; remaining schemes run.
std::vector<BenchmarkReport> run_benchmark(const RunConfig& config, std::ostream& results_jsonl,
                                           std::ostream& log);

/// Renders the per-fold JSON lines as the benchmark table. The best Top-1
/// and Top-5 within the geometric and photometric categories are starred.
/// Throws ParseError naming the offending 1-based line on malformed input.
std::string render_report(std::istream& results_jsonl);

} // namespace augbench
