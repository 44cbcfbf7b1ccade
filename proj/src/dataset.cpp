#include "augbench/dataset.hpp"

#include "augbench/errors.hpp"
#include "augbench/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>

namespace fs = std::filesystem;

namespace augbench {

LabeledDataset ingest(const fs::path& root, const std::vector<std::string>& excluded_classes,
                      IngestReport* report, int max_classes, int max_per_class) {
    if (!fs::is_directory(root)) throw EmptyDatasetError("dataset root is not a directory: " + root.string());

    std::vector<std::string> classes;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (std::find(excluded_classes.begin(), excluded_classes.end(), name) !=
            excluded_classes.end())
            continue;
        classes.push_back(name);
    }
    std::sort(classes.begin(), classes.end());
    if (max_classes > 0 && static_cast<int>(classes.size()) > max_classes)
        classes.resize(max_classes);

    LabeledDataset ds;
    ds.classes = classes;
    for (int label = 0; label < static_cast<int>(classes.size()); ++label) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root / classes[label]))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (max_per_class > 0 && static_cast<int>(files.size()) > max_per_class)
            files.resize(max_per_class);

        for (const auto& file : files) {
            try {
                LabeledImage item;
                item.image = standardize(load_image(file));
                item.label = label;
                item.source_id = classes[label] + "/" + file.filename().string();
                ds.items.push_back(std::move(item));
            } catch (const DataError& e) {
                if (report) report->skipped.push_back(file.string() + ": " + e.what());
            }
        }
    }
    if (ds.items.empty()) throw EmptyDatasetError("no decodable images under " + root.string());
    return ds;
}

LabeledDataset trim_to_multiple(const LabeledDataset& ds, int k, std::uint64_t seed) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.items.size(); ++i) by_class[ds.items[i].label].push_back(i);

    Rng rng = Rng(seed).fork(rng_salt::trim);
    std::vector<bool> keep(ds.items.size(), false);
    std::vector<int> kept_per_class(ds.classes.size(), 0);
    for (auto& [label, indices] : by_class) {
        const std::size_t target = indices.size() / k * k;
        if (target == 0) continue; // class dropped entirely
        // seeded random drop of the remainder; kept items stay path-ordered
        std::vector<std::size_t> pool = indices;
        rng.shuffle(pool);
        pool.resize(target);
        for (std::size_t idx : pool) keep[idx] = true;
        kept_per_class[label] = static_cast<int>(target);
    }

    LabeledDataset out;
    // classes with zero survivors disappear; labels are re-indexed
    std::vector<int> new_label(ds.classes.size(), -1);
    for (std::size_t c = 0; c < ds.classes.size(); ++c) {
        if (kept_per_class[c] > 0) {
            new_label[c] = static_cast<int>(out.classes.size());
            out.classes.push_back(ds.classes[c]);
        }
    }
    if (out.classes.empty()) throw EmptyDatasetError("every class fell below " + std::to_string(k) + " items");
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        if (!keep[i]) continue;
        LabeledImage item = ds.items[i];
        item.label = new_label[item.label];
        out.items.push_back(std::move(item));
    }
    return out;
}

FoldSplit make_folds(const LabeledDataset& ds, std::uint64_t seed) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        if (ds.items[i].provenance.augmented) continue;
        by_class[ds.items[i].label].push_back(i);
    }
    for (const auto& [label, indices] : by_class)
        if (indices.size() % kFoldCount != 0)
            throw NotTrimmedError("class '" + ds.classes[label] + "' has " +
                                  std::to_string(indices.size()) +
                                  " items, not divisible by " + std::to_string(kFoldCount));

    FoldSplit split;
    split.assignments.assign(ds.items.size(), -1);
    Rng base = Rng(seed).fork(rng_salt::folds);
    for (auto& [label, indices] : by_class) {
        Rng rng = base.fork(static_cast<std::uint64_t>(label));
        rng.shuffle(indices);
        for (std::size_t i = 0; i < indices.size(); ++i)
            split.assignments[indices[i]] = static_cast<int>(i % kFoldCount);
    }
    return split;
}

std::vector<LabeledImage> inflate(const std::vector<LabeledImage>& training_items,
                                  const AugmentationScheme& scheme, std::uint64_t seed) {
    std::vector<LabeledImage> out;
    out.reserve(training_items.size() * (1 + scheme.variant_count()));
    Rng base = Rng(seed).fork(rng_salt::inflate);
    for (std::size_t i = 0; i < training_items.size(); ++i) {
        const LabeledImage& parent = training_items[i];
        out.push_back(parent);
        Rng rng = base.fork(i);
        std::vector<RawImage> variants = apply_scheme(scheme, parent.image, rng);
        for (std::size_t v = 0; v < variants.size(); ++v) {
            LabeledImage child;
            child.image = std::move(variants[v]);
            child.label = parent.label;
            child.source_id = parent.source_id;
            child.provenance = Provenance{true, scheme.kind, static_cast<int>(v)};
            out.push_back(std::move(child));
        }
    }
    return out;
}

std::string fold_manifest_json(const LabeledDataset& ds, const FoldSplit& split) {
    nlohmann::ordered_json manifest;
    for (std::size_t i = 0; i < ds.items.size(); ++i)
        if (split.assignments[i] >= 0) manifest[ds.items[i].source_id] = split.assignments[i];
    return manifest.dump(2) + "\n";
}

std::string augmented_file_name(const std::string& stem, const AugmentationScheme& scheme,
                                int variant) {
    return stem + "__" + scheme.name() + std::to_string(variant) + ".ppm";
}

} // namespace augbench
