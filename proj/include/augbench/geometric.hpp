#pragma once

#include "augbench/image.hpp"

#include <vector>

namespace augbench {

/// Rotation angle in degrees, positive counter-clockwise, in (-180, 180].
struct RotationParams {
    double theta = 0.0;

    static RotationParams degrees(double theta);
};

/// Five-crop geometry: crop_size x crop_size windows from a square
/// source_size image (paper defaults 224 from 256).
struct CropParams {
    int crop_size = 224;
    int source_size = kStandardSize;

    static CropParams sizes(int crop, int source);
};

/// Mirror across the vertical axis: out(x, y) = in(width-1-x, y).
RawImage flip_horizontal(const RawImage& img);

/// Rotate about the pixel-grid center ((w-1)/2, (h-1)/2) by inverse mapping
/// with bilinear interpolation; destinations whose preimage falls outside
/// the source are black. Dimensions unchanged. 1x1 images are returned as-is.
RawImage rotate(const RawImage& img, const RotationParams& params);

/// Crops in fixed order [top-left, top-right, bottom-left, bottom-right,
/// center]; center offset is floor((source-crop)/2) in both axes.
/// Throws DimensionMismatchError unless img is source_size square.
std::vector<RawImage> five_crop(const RawImage& img, const CropParams& params);

} // namespace augbench
