#include "augbench/image.hpp"

#include "augbench/errors.hpp"
#include "augbench/kernels.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace augbench {

namespace {

// Reads one whitespace-delimited PNM header token, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

int parse_dim(const std::string& tok, const std::filesystem::path& path) {
    try {
        const int v = std::stoi(tok);
        if (v < 1) throw std::invalid_argument("non-positive");
        return v;
    } catch (const std::exception&) {
        throw CorruptImageError("bad PNM header token '" + tok + "' in " + path.string());
    }
}

} // namespace

RawImage load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        throw FileNotFoundError("no such file: " + path.string());

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    const std::string magic = next_token(in);
    if (magic != "P6" && magic != "P5")
        throw UnsupportedFormatError("unsupported image format in " + path.string() +
                                     " (binary PPM/PGM required)");

    const int width = parse_dim(next_token(in), path);
    const int height = parse_dim(next_token(in), path);
    const int maxval = parse_dim(next_token(in), path);
    if (maxval != 255)
        throw UnsupportedFormatError("maxval " + std::to_string(maxval) + " in " + path.string() +
                                     " (only 8-bit supported)");
    // header token reader consumed exactly one whitespace after maxval

    const std::size_t npix = static_cast<std::size_t>(width) * height;
    RawImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(npix * 3);

    if (magic == "P6") {
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(npix * 3));
        if (static_cast<std::size_t>(in.gcount()) != npix * 3)
            throw CorruptImageError("truncated pixel data in " + path.string());
    } else {
        std::vector<std::uint8_t> gray(npix);
        in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(npix));
        if (static_cast<std::size_t>(in.gcount()) != npix)
            throw CorruptImageError("truncated pixel data in " + path.string());
        for (std::size_t i = 0; i < npix; ++i) {
            img.pixels[i * 3 + 0] = gray[i];
            img.pixels[i * 3 + 1] = gray[i];
            img.pixels[i * 3 + 2] = gray[i];
        }
    }
    return img;
}

void save_image(const RawImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

RawImage standardize(const RawImage& img) {
    if (img.width == kStandardSize && img.height == kStandardSize) return img;

    const int maxdim = std::max(img.width, img.height);
    // largest dimension -> 256, the other scaled proportionally (rounded)
    int new_w, new_h;
    if (img.width >= img.height) {
        new_w = kStandardSize;
        new_h = std::max(1, static_cast<int>(std::lround(
                                static_cast<double>(img.height) * kStandardSize / maxdim)));
    } else {
        new_h = kStandardSize;
        new_w = std::max(1, static_cast<int>(std::lround(
                                static_cast<double>(img.width) * kStandardSize / maxdim)));
    }

    RawImage resized = RawImage::create(new_w, new_h);
    if (new_w == img.width && new_h == img.height) {
        resized = img;
    } else {
        kern::resize_bilinear_u8(img.pixels.data(), img.width, img.height, resized.pixels.data(),
                                 new_w, new_h);
    }

    RawImage canvas = RawImage::create(kStandardSize, kStandardSize);
    const int off_x = (kStandardSize - new_w) / 2;
    const int off_y = (kStandardSize - new_h) / 2;
    for (int y = 0; y < new_h; ++y) {
        auto* dst = &canvas.pixels[((static_cast<std::size_t>(off_y) + y) * kStandardSize + off_x) * 3];
        const auto* src = &resized.pixels[static_cast<std::size_t>(y) * new_w * 3];
        std::copy(src, src + static_cast<std::size_t>(new_w) * 3, dst);
    }
    return canvas;
}

NormalizedImage normalize(const RawImage& img) {
    NormalizedImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = img.pixels[i] / 255.0;
    return out;
}

RawImage to_grayscale(const RawImage& img) {
    RawImage out = RawImage::create(img.width, img.height);
    const std::size_t npix = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < npix; ++i) {
        const double g = 0.299 * img.pixels[i * 3 + 0] + 0.587 * img.pixels[i * 3 + 1] +
                         0.114 * img.pixels[i * 3 + 2];
        const std::uint8_t q = quantize_channel(g);
        out.pixels[i * 3 + 0] = q;
        out.pixels[i * 3 + 1] = q;
        out.pixels[i * 3 + 2] = q;
    }
    return out;
}

RawImage invert(const RawImage& img) {
    RawImage out = img;
    for (auto& v : out.pixels) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

} // namespace augbench
