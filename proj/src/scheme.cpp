#include "augbench/scheme.hpp"

#include "augbench/errors.hpp"

#include <stdexcept>

namespace augbench {

int AugmentationScheme::variant_count() const {
    switch (kind) {
        case SchemeKind::None: return 0;
        case SchemeKind::Flip: return 1;
        case SchemeKind::Rotate: return 2;
        case SchemeKind::Crop: return 5;
        case SchemeKind::Jitter: return 1;
        case SchemeKind::Edge: return 1;
        case SchemeKind::FancyPca: return 1;
    }
    return 0;
}

std::string AugmentationScheme::name() const {
    switch (kind) {
        case SchemeKind::None: return "none";
        case SchemeKind::Flip: return "flip";
        case SchemeKind::Rotate: return "rotate";
        case SchemeKind::Crop: return "crop";
        case SchemeKind::Jitter: return "jitter";
        case SchemeKind::Edge: return "edge";
        case SchemeKind::FancyPca: return "fancy_pca";
    }
    return "none";
}

AugmentationScheme AugmentationScheme::of(SchemeKind kind) {
    AugmentationScheme s;
    s.kind = kind;
    return s;
}

AugmentationScheme AugmentationScheme::parse(const std::string& name) {
    for (const auto& known : all_names())
        if (name == known) {
            if (name == "none") return of(SchemeKind::None);
            if (name == "flip") return of(SchemeKind::Flip);
            if (name == "rotate") return of(SchemeKind::Rotate);
            if (name == "crop") return of(SchemeKind::Crop);
            if (name == "jitter") return of(SchemeKind::Jitter);
            if (name == "edge") return of(SchemeKind::Edge);
            return of(SchemeKind::FancyPca);
        }
    throw ParseError("unknown scheme '" + name + "'");
}

const std::vector<std::string>& AugmentationScheme::all_names() {
    static const std::vector<std::string> names = {"none", "flip",   "rotate", "crop",
                                                   "jitter", "edge", "fancy_pca"};
    return names;
}

std::vector<RawImage> apply_scheme(const AugmentationScheme& scheme, const RawImage& img,
                                   Rng& rng) {
    switch (scheme.kind) {
        case SchemeKind::None: return {};
        case SchemeKind::Flip: return {flip_horizontal(img)};
        case SchemeKind::Rotate: return {rotate(img, scheme.rotate_neg), rotate(img, scheme.rotate_pos)};
        case SchemeKind::Crop: return five_crop(img, scheme.crop);
        case SchemeKind::Jitter: return {color_jitter(img, scheme.jitter)};
        case SchemeKind::Edge: return {edge_enhance(img)};
        case SchemeKind::FancyPca: {
            const FancyPcaBasis basis = compute_pca_basis(img, scheme.pca_scale);
            return {fancy_pca(img, basis, AlphaDraw::sample(rng))};
        }
    }
    return {};
}

} // namespace augbench
