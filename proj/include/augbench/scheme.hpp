#pragma once

#include "augbench/geometric.hpp"
#include "augbench/image.hpp"
#include "augbench/photometric.hpp"
#include "augbench/rng.hpp"

#include <string>
#include <vector>

namespace augbench {

enum class SchemeKind { None, Flip, Rotate, Crop, Jitter, Edge, FancyPca };

/// One of the seven augmentation schemes together with its parameters.
struct AugmentationScheme {
    SchemeKind kind = SchemeKind::None;
    RotationParams rotate_neg{-30.0}; // the two rotation variants
    RotationParams rotate_pos{+30.0};
    CropParams crop{};
    JitterParams jitter{};
    double pca_scale = kDefaultPcaScale;

    /// Augmented variants produced per source image (0 for None).
    int variant_count() const;

    std::string name() const;

    static AugmentationScheme of(SchemeKind kind);
    /// Parses one of {none, flip, rotate, crop, jitter, edge, fancy_pca}.
    static AugmentationScheme parse(const std::string& name);
    static const std::vector<std::string>& all_names();
};

/// The variants for one source image, in deterministic order. rng supplies
/// the fancy-PCA alpha draw and is untouched by the other schemes.
std::vector<RawImage> apply_scheme(const AugmentationScheme& scheme, const RawImage& img, Rng& rng);

} // namespace augbench
