#pragma once

#include <string>
#include <vector>

namespace augbench {

struct FoldResult {
    int fold_index = 0;
    double top1 = 0.0;
    double top5 = 0.0;
    int item_count = 0;
};

/// Per-scheme cross-validation summary (sample standard deviation, n-1).
struct BenchmarkReport {
    std::string scheme;
    std::vector<FoldResult> folds;
    double top1_mean = 0.0, top1_std = 0.0;
    double top5_mean = 0.0, top5_std = 0.0;
};

/// Fraction of items whose true label ranks within the top k probabilities.
/// Ties rank the lower class index first, so degenerate uniform outputs
/// score deterministically. Throws ShapeMismatchError on ragged inputs.
double top_k_accuracy(const std::vector<std::vector<double>>& probabilities,
                      const std::vector<int>& labels, int k);

/// Cross-fold mean and sample standard deviation per metric.
/// Throws InsufficientFoldsError when fewer than 2 folds are given.
BenchmarkReport aggregate(const std::string& scheme, const std::vector<FoldResult>& fold_results);

/// "61.95 ± 1.01%" (values given as fractions of 1).
std::string format_accuracy(double mean, double stddev);

} // namespace augbench
