#include "augbench/photometric.hpp"

#include "augbench/errors.hpp"
#include "augbench/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augbench {

JitterParams JitterParams::deltas(double hue, double saturation, double brightness) {
    if (!(std::abs(hue) <= 0.5)) throw std::invalid_argument("|delta_hue| must be <= 0.5");
    if (!(saturation >= -1.0 && saturation <= 1.0))
        throw std::invalid_argument("delta_saturation must be in [-1, 1]");
    if (!(brightness >= -1.0 && brightness <= 1.0))
        throw std::invalid_argument("delta_brightness must be in [-1, 1]");
    return JitterParams{hue, saturation, brightness};
}

namespace {

struct Hsb {
    double h, s, b; // h in [0, 1), s and b in [0, 1]
};

Hsb rgb_to_hsb(double r, double g, double b) {
    const double maxc = std::max({r, g, b});
    const double minc = std::min({r, g, b});
    const double d = maxc - minc;
    Hsb out{0.0, 0.0, maxc};
    if (maxc > 0.0) out.s = d / maxc;
    if (d > 0.0) {
        double h6;
        if (maxc == r)
            h6 = (g - b) / d;
        else if (maxc == g)
            h6 = (b - r) / d + 2.0;
        else
            h6 = (r - g) / d + 4.0;
        if (h6 < 0.0) h6 += 6.0;
        out.h = h6 / 6.0;
        if (out.h >= 1.0) out.h -= 1.0;
    }
    return out;
}

void hsb_to_rgb(const Hsb& in, double& r, double& g, double& b) {
    if (in.s <= 0.0) {
        r = g = b = in.b;
        return;
    }
    double h6 = in.h * 6.0;
    if (h6 >= 6.0) h6 -= 6.0;
    const int sector = std::min(5, static_cast<int>(h6));
    const double f = h6 - sector;
    const double v = in.b;
    const double p = v * (1.0 - in.s);
    const double q = v * (1.0 - in.s * f);
    const double t = v * (1.0 - in.s * (1.0 - f));
    switch (sector) {
        case 0: r = v; g = t; b = p; break;
        case 1: r = q; g = v; b = p; break;
        case 2: r = p; g = v; b = t; break;
        case 3: r = p; g = q; b = v; break;
        case 4: r = t; g = p; b = v; break;
        default: r = v; g = p; b = q; break;
    }
}

} // namespace

RawImage color_jitter(const RawImage& img, const JitterParams& params) {
    RawImage out = RawImage::create(img.width, img.height);
    const std::size_t npix = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < npix; ++i) {
        Hsb hsb = rgb_to_hsb(img.pixels[i * 3 + 0] / 255.0, img.pixels[i * 3 + 1] / 255.0,
                             img.pixels[i * 3 + 2] / 255.0);
        hsb.h = std::fmod(hsb.h + params.delta_hue, 1.0);
        if (hsb.h < 0.0) hsb.h += 1.0;
        hsb.s = std::clamp(hsb.s + params.delta_saturation, 0.0, 1.0);
        hsb.b = std::clamp(hsb.b + params.delta_brightness, 0.0, 1.0);
        double r, g, b;
        hsb_to_rgb(hsb, r, g, b);
        out.pixels[i * 3 + 0] = quantize_channel(r * 255.0);
        out.pixels[i * 3 + 1] = quantize_channel(g * 255.0);
        out.pixels[i * 3 + 2] = quantize_channel(b * 255.0);
    }
    return out;
}

RawImage sobel_gradient(const RawImage& img) {
    RawImage out = RawImage::create(img.width, img.height);
    kern::sobel_magnitude_u8(img.pixels.data(), out.pixels.data(), img.width, img.height, 3);
    return out;
}

RawImage edge_enhance(const RawImage& img) {
    const RawImage overlay = invert(to_grayscale(sobel_gradient(img)));
    RawImage out = RawImage::create(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = quantize_channel((img.pixels[i] + static_cast<double>(overlay.pixels[i])) / 2.0);
    return out;
}

namespace {

// Cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix. a is consumed;
// v accumulates the rotations (columns end up as eigenvectors).
void jacobi_eigen3(std::array<std::array<double, 3>, 3>& a, std::array<double, 3>& eig,
                   std::array<std::array<double, 3>, 3>& v) {
    v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        double diag = std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]);
        if (off <= 1e-300 || off <= 1e-15 * std::max(diag, 1e-300)) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double apq = a[p][q];
                const double app = a[p][p];
                const double aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = a[q][p] = 0.0;
                const int r = 3 - p - q; // the remaining index
                const double arp = a[r][p];
                const double arq = a[r][q];
                a[r][p] = a[p][r] = c * arp - s * arq;
                a[r][q] = a[q][r] = s * arp + c * arq;
                for (int i = 0; i < 3; ++i) {
                    const double vip = v[i][p];
                    const double viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }
    eig = {a[0][0], a[1][1], a[2][2]};
}

} // namespace

FancyPcaBasis compute_pca_basis(const RawImage& img, double scale) {
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    if (n < 3)
        throw DegenerateImageError("fancy PCA needs at least 3 pixels, got " + std::to_string(n));

    double mean[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) mean[c] += img.pixels[i * 3 + c];
    for (double& m : mean) m /= static_cast<double>(n);

    std::array<std::array<double, 3>, 3> cov{};
    for (std::size_t i = 0; i < n; ++i) {
        const double d0 = img.pixels[i * 3 + 0] - mean[0];
        const double d1 = img.pixels[i * 3 + 1] - mean[1];
        const double d2 = img.pixels[i * 3 + 2] - mean[2];
        cov[0][0] += d0 * d0;
        cov[0][1] += d0 * d1;
        cov[0][2] += d0 * d2;
        cov[1][1] += d1 * d1;
        cov[1][2] += d1 * d2;
        cov[2][2] += d2 * d2;
    }
    cov[1][0] = cov[0][1];
    cov[2][0] = cov[0][2];
    cov[2][1] = cov[1][2];
    for (auto& row : cov)
        for (double& x : row) x /= static_cast<double>(n - 1);

    std::array<double, 3> eig;
    std::array<std::array<double, 3>, 3> vec;
    jacobi_eigen3(cov, eig, vec);

    // sort eigenpairs non-increasing
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return eig[i] > eig[j]; });

    FancyPcaBasis basis;
    basis.scale = scale;
    for (int k = 0; k < 3; ++k) {
        basis.eigenvalues[k] = std::max(0.0, eig[order[k]]);
        for (int r = 0; r < 3; ++r) basis.eigenvectors[r][k] = vec[r][order[k]];
    }

    // deterministic sign: largest-magnitude component non-negative
    for (int k = 0; k < 3; ++k) {
        int arg = 0;
        for (int r = 1; r < 3; ++r)
            if (std::abs(basis.eigenvectors[r][k]) > std::abs(basis.eigenvectors[arg][k])) arg = r;
        if (basis.eigenvectors[arg][k] < 0.0)
            for (int r = 0; r < 3; ++r) basis.eigenvectors[r][k] = -basis.eigenvectors[r][k];
    }
    return basis;
}

RawImage fancy_pca(const RawImage& img, const FancyPcaBasis& basis, const AlphaDraw& draw) {
    double offset[3];
    for (int r = 0; r < 3; ++r) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k)
            acc += basis.eigenvectors[r][k] * (draw.alphas[k] * basis.eigenvalues[k]);
        offset[r] = acc / basis.scale;
    }
    RawImage out = RawImage::create(img.width, img.height);
    const std::size_t npix = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < npix; ++i)
        for (int c = 0; c < 3; ++c)
            out.pixels[i * 3 + c] = quantize_channel(img.pixels[i * 3 + c] + offset[c]);
    return out;
}

} // namespace augbench
