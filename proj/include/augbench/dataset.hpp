#pragma once

#include "augbench/image.hpp"
#include "augbench/scheme.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace augbench {

struct Provenance {
    bool augmented = false;
    SchemeKind scheme = SchemeKind::None; // meaningful when augmented
    int variant = 0;
};

/// A standardized image with its class label and stable source identity.
struct LabeledImage {
    RawImage image;
    int label = 0;
    std::string source_id; // relative path under the dataset root
    Provenance provenance{};
};

struct LabeledDataset {
    std::vector<std::string> classes; // unique, lexicographically sorted
    std::vector<LabeledImage> items;
};

inline constexpr int kFoldCount = 4;

/// Per-item fold index, aligned with LabeledDataset::items. Only original
/// items are ever assigned.
struct FoldSplit {
    int fold_count = kFoldCount;
    std::vector<int> assignments;
};

/// Files that failed to decode during ingestion (skip-and-log contract).
struct IngestReport {
    std::vector<std::string> skipped; // "path: reason"
};

/// Loads <root>/<class>/<file>, standardizing every image to 256x256.
/// Classes are sorted subdirectory names minus excluded; items are
/// path-sorted. Throws EmptyDatasetError when nothing decodes.
LabeledDataset ingest(const std::filesystem::path& root,
                      const std::vector<std::string>& excluded_classes,
                      IngestReport* report = nullptr, int max_classes = 0, int max_per_class = 0);

/// Per class keeps the largest multiple of k items (seeded random drop) and
/// drops classes with fewer than k items entirely.
LabeledDataset trim_to_multiple(const LabeledDataset& ds, int k, std::uint64_t seed);

/// Stratified split: each class is shuffled with the seed and dealt
/// round-robin into 4 folds. Requires every class cardinality divisible by 4.
FoldSplit make_folds(const LabeledDataset& ds, std::uint64_t seed);

/// S' = S u T: the originals plus every scheme variant, labels copied.
std::vector<LabeledImage> inflate(const std::vector<LabeledImage>& training_items,
                                  const AugmentationScheme& scheme, std::uint64_t seed);

/// Serializes a fold split as a JSON object mapping source_id -> fold.
std::string fold_manifest_json(const LabeledDataset& ds, const FoldSplit& split);

/// File name an augmented variant is materialized under: <stem>__<scheme><k>.ppm
std::string augmented_file_name(const std::string& stem, const AugmentationScheme& scheme,
                                int variant);

} // namespace augbench
