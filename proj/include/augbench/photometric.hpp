#pragma once

#include "augbench/image.hpp"
#include "augbench/rng.hpp"

#include <array>

namespace augbench {

/// Set HSB adjustment. delta_hue is a fraction of the full hue circle.
/// Defaults are artifact choices, not values from any published source.
struct JitterParams {
    double delta_hue = 0.05;
    double delta_saturation = 0.15;
    double delta_brightness = 0.15;

    static JitterParams deltas(double hue, double saturation, double brightness);
};

/// Per-image PCA of the RGB pixel cloud: orthonormal eigenvector columns,
/// covariance eigenvalues sorted non-increasing, and the perturbation scale.
struct FancyPcaBasis {
    std::array<std::array<double, 3>, 3> eigenvectors{}; // [row][col], columns are eigenvectors
    std::array<double, 3> eigenvalues{};
    double scale = 5e6;
};

inline constexpr double kDefaultPcaScale = 5e6;
inline constexpr double kAlphaStddev = 0.1;

/// The three Gaussian draws of one fancy-PCA application.
struct AlphaDraw {
    std::array<double, 3> alphas{};

    static AlphaDraw sample(Rng& rng) {
        return AlphaDraw{{rng.gaussian(0.0, kAlphaStddev), rng.gaussian(0.0, kAlphaStddev),
                          rng.gaussian(0.0, kAlphaStddev)}};
    }
};

/// RGB -> HSB, shift hue modulo 1, shift+clamp saturation/brightness,
/// HSB -> RGB. Zero deltas reproduce the input exactly on 8-bit images.
RawImage color_jitter(const RawImage& img, const JitterParams& params);

/// Per-channel Sobel gradient magnitude with replicate-edge padding.
RawImage sobel_gradient(const RawImage& img);

/// T = invert(grayscale(sobel(img))), then a 50% alpha composite of T over img.
RawImage edge_enhance(const RawImage& img);

/// Mean-centered covariance of the N x 3 pixel matrix, eigendecomposed.
/// Throws DegenerateImageError if the image has fewer than 3 pixels.
FancyPcaBasis compute_pca_basis(const RawImage& img, double scale = kDefaultPcaScale);

/// Adds the offset (1/scale) * P * (a1*l1, a2*l2, a3*l3)^T to every pixel.
RawImage fancy_pca(const RawImage& img, const FancyPcaBasis& basis, const AlphaDraw& draw);

} // namespace augbench
