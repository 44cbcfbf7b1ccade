#include "augbench/geometric.hpp"

#include "augbench/errors.hpp"
#include "augbench/kernels.hpp"

#include <stdexcept>
#include <string>

namespace augbench {

RotationParams RotationParams::degrees(double theta) {
    if (!(theta > -180.0 && theta <= 180.0))
        throw std::invalid_argument("rotation angle must be in (-180, 180]");
    return RotationParams{theta};
}

CropParams CropParams::sizes(int crop, int source) {
    if (crop < 1 || crop > source)
        throw std::invalid_argument("crop_size must satisfy 0 < crop_size <= source_size");
    return CropParams{crop, source};
}

RawImage flip_horizontal(const RawImage& img) {
    RawImage out = RawImage::create(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(img.width - 1 - x, y, c);
    return out;
}

RawImage rotate(const RawImage& img, const RotationParams& params) {
    if (img.width == 1 && img.height == 1) return img; // center pixel is the fixpoint
    RawImage out = RawImage::create(img.width, img.height);
    kern::rotate_bilinear_u8(img.pixels.data(), img.width, img.height, params.theta,
                             out.pixels.data());
    return out;
}

std::vector<RawImage> five_crop(const RawImage& img, const CropParams& params) {
    const int s = params.source_size;
    const int c = params.crop_size;
    if (img.width != s || img.height != s)
        throw DimensionMismatchError("five_crop expects a " + std::to_string(s) + "x" +
                                     std::to_string(s) + " image, got " +
                                     std::to_string(img.width) + "x" + std::to_string(img.height));

    const int m = (s - c) / 2;
    const int anchors[5][2] = {{0, 0}, {s - c, 0}, {0, s - c}, {s - c, s - c}, {m, m}};

    std::vector<RawImage> crops;
    crops.reserve(5);
    for (const auto& a : anchors) {
        RawImage crop = RawImage::create(c, c);
        for (int y = 0; y < c; ++y) {
            const auto* src = &img.pixels[((static_cast<std::size_t>(a[1]) + y) * s + a[0]) * 3];
            std::copy(src, src + static_cast<std::size_t>(c) * 3,
                      &crop.pixels[static_cast<std::size_t>(y) * c * 3]);
        }
        crops.push_back(std::move(crop));
    }
    return crops;
}

} // namespace augbench
