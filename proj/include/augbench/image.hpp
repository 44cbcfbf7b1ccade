#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace augbench {

/// Side length every dataset image is standardized to.
inline constexpr int kStandardSize = 256;

/// 8-bit RGB image, interleaved row-major. pixels.size() == 3*width*height.
struct RawImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    static RawImage create(int w, int h, std::uint8_t fill = 0) {
        return RawImage{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h * 3, fill)};
    }

    std::uint8_t at(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        auto* p = &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }

    bool operator==(const RawImage& o) const = default;
};

/// Real-valued RGB image with channels in [0, 1]. Same layout as RawImage.
struct NormalizedImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int x, int y, int c) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
};

/// Repo-wide real -> 8-bit conversion: round half away from zero, clamp to [0, 255].
inline std::uint8_t quantize_channel(double v) {
    const long r = std::lround(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

/// Decode a binary PPM (P6) or PGM (P5, expanded to 3 identical channels).
/// Throws FileNotFoundError, UnsupportedFormatError, CorruptImageError.
RawImage load_image(const std::filesystem::path& path);

/// Write img as binary PPM: "P6\n<w> <h>\n255\n" + raw RGB bytes.
/// Round-trips bit-exactly through load_image. Throws IoError.
void save_image(const RawImage& img, const std::filesystem::path& path);

/// Scale so max(w, h) == 256 (bilinear, aspect preserved) and center the
/// result on a 256x256 black canvas. 256x256 inputs pass through unchanged.
RawImage standardize(const RawImage& img);

/// Per-channel v -> v/255.
NormalizedImage normalize(const RawImage& img);

/// BT.601 luma: g = round(0.299 r + 0.587 g + 0.114 b), replicated to all channels.
RawImage to_grayscale(const RawImage& img);

/// Per-channel v -> 255 - v.
RawImage invert(const RawImage& img);

} // namespace augbench
