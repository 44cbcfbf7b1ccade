#include "augbench/eval.hpp"

#include "augbench/errors.hpp"

#include <cmath>
#include <cstdio>

namespace augbench {

double top_k_accuracy(const std::vector<std::vector<double>>& probabilities,
                      const std::vector<int>& labels, int k) {
    if (probabilities.size() != labels.size())
        throw ShapeMismatchError("probability rows and labels differ in count");
    if (probabilities.empty()) throw ShapeMismatchError("no items to score");
    if (k < 1) throw ShapeMismatchError("k must be >= 1");

    const std::size_t classes = probabilities.front().size();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const auto& p = probabilities[i];
        if (p.size() != classes) throw ShapeMismatchError("ragged probability rows");
        const std::size_t t = static_cast<std::size_t>(labels[i]);
        if (t >= classes) throw ShapeMismatchError("label out of range");
        // rank = classes strictly ahead, ties broken toward the lower index
        std::size_t rank = 0;
        for (std::size_t j = 0; j < classes; ++j) {
            if (p[j] > p[t] || (p[j] == p[t] && j < t)) ++rank;
        }
        if (rank < static_cast<std::size_t>(k)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(probabilities.size());
}

BenchmarkReport aggregate(const std::string& scheme, const std::vector<FoldResult>& fold_results) {
    if (fold_results.size() < 2)
        throw InsufficientFoldsError("aggregate needs at least 2 folds, got " +
                                     std::to_string(fold_results.size()));

    BenchmarkReport report;
    report.scheme = scheme;
    report.folds = fold_results;

    const double n = static_cast<double>(fold_results.size());
    double m1 = 0.0, m5 = 0.0;
    for (const auto& f : fold_results) {
        m1 += f.top1;
        m5 += f.top5;
    }
    m1 /= n;
    m5 /= n;
    double s1 = 0.0, s5 = 0.0;
    for (const auto& f : fold_results) {
        s1 += (f.top1 - m1) * (f.top1 - m1);
        s5 += (f.top5 - m5) * (f.top5 - m5);
    }
    report.top1_mean = m1;
    report.top5_mean = m5;
    report.top1_std = std::sqrt(s1 / (n - 1.0));
    report.top5_std = std::sqrt(s5 / (n - 1.0));
    return report;
}

std::string format_accuracy(double mean, double stddev) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f ± %.2f%%", mean * 100.0, stddev * 100.0);
    return buf;
}

} // namespace augbench
