#pragma once

// Per-work-unit bodies shared by the serial and OpenMP kernel backends.
// A work unit owns a disjoint slice of the output and accumulates in a
// fixed order, so backends differ only in how units are scheduled and the
// results stay bitwise identical.

#include "augbench/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace augbench::kern::detail {

inline constexpr int kGemmRowBlock = 4;
inline constexpr int kGemmColTile = 1024;

inline int div_up(int a, int b) { return (a + b - 1) / b; }

// One (row-block, column-tile) GEMM task: C[i0..i1) x [j0..j1) += A * B.
inline void gemm_task(int n, int k, const double* a, const double* b, double* c, int lda, int i0,
                      int i1, int j0, int j1) {
    int i = i0;
    for (; i + 4 <= i1; i += 4) {
        for (int kk = 0; kk < k; ++kk) {
            const double a0 = a[(i + 0) * lda + kk];
            const double a1 = a[(i + 1) * lda + kk];
            const double a2 = a[(i + 2) * lda + kk];
            const double a3 = a[(i + 3) * lda + kk];
            const double* brow = b + static_cast<std::size_t>(kk) * n;
            double* c0 = c + static_cast<std::size_t>(i + 0) * n;
            double* c1 = c + static_cast<std::size_t>(i + 1) * n;
            double* c2 = c + static_cast<std::size_t>(i + 2) * n;
            double* c3 = c + static_cast<std::size_t>(i + 3) * n;
            for (int j = j0; j < j1; ++j) {
                const double bj = brow[j];
                c0[j] += a0 * bj;
                c1[j] += a1 * bj;
                c2[j] += a2 * bj;
                c3[j] += a3 * bj;
            }
        }
    }
    for (; i < i1; ++i) {
        for (int kk = 0; kk < k; ++kk) {
            const double av = a[i * lda + kk];
            const double* brow = b + static_cast<std::size_t>(kk) * n;
            double* crow = c + static_cast<std::size_t>(i) * n;
            for (int j = j0; j < j1; ++j) crow[j] += av * brow[j];
        }
    }
}

inline constexpr int kNtRowTile = 64;  // B rows per tile
inline constexpr int kNtColTile = 2048; // k elements per tile; tile ~1 MB, L2-resident

// One (i, B-row-tile, k-tile) unit of C += A * B^T: partial dots of A row i
// against the tile's B rows. 32 interleaved partial sums keep several vector
// FMA chains in flight; lane reduction order is fixed so results are
// reproducible. Units touching the same C element are ordered by k0 by both
// backends.
inline void gemm_nt_tile(int k, const double* a, const double* b, double* c, int i, int j0, int j1,
                         int k0, int k1) {
    constexpr int L = 32;
    const double* arow = a + static_cast<std::size_t>(i) * k + k0;
    double* crow = c; // caller passes the row base
    const int kl = k1 - k0;
    for (int j = j0; j < j1; ++j) {
        const double* brow = b + static_cast<std::size_t>(j) * k + k0;
        double lane[L] = {};
        int kk = 0;
        for (; kk + L <= kl; kk += L)
            for (int l = 0; l < L; ++l) lane[l] += arow[kk + l] * brow[kk + l];
        double tail = 0.0;
        for (; kk < kl; ++kk) tail += arow[kk] * brow[kk];
        double acc = 0.0;
        for (int l = 0; l < L; ++l) acc += lane[l];
        crow[j] += acc + tail;
    }
}

// One row of the im2col matrix: row r corresponds to (ic, ky, kx).
inline void im2col_row(const ConvGeom& g, const double* in, double* col, int r) {
    const int kk = g.kernel;
    const int ic = r / (kk * kk);
    const int ky = (r / kk) % kk;
    const int kx = r % kk;
    const double* plane = in + static_cast<std::size_t>(ic) * g.in_h * g.in_w;
    double* dst = col + static_cast<std::size_t>(r) * g.out_h * g.out_w;
    for (int oy = 0; oy < g.out_h; ++oy) {
        const int iy = oy * g.stride - g.pad + ky;
        for (int ox = 0; ox < g.out_w; ++ox) {
            const int ix = ox * g.stride - g.pad + kx;
            const bool inside = iy >= 0 && iy < g.in_h && ix >= 0 && ix < g.in_w;
            dst[oy * g.out_w + ox] = inside ? plane[iy * g.in_w + ix] : 0.0;
        }
    }
}

// Scatter form of col2im for one input channel. Channels own disjoint
// in_grad planes and the (ky, kx, oy, ox) order is fixed, so per-channel
// units are conflict-free and deterministic.
inline void col2im_channel(const ConvGeom& g, const double* col, double* in_grad, int ic) {
    const int kk = g.kernel;
    double* plane = in_grad + static_cast<std::size_t>(ic) * g.in_h * g.in_w;
    for (int ky = 0; ky < kk; ++ky) {
        for (int kx = 0; kx < kk; ++kx) {
            const int r = (ic * kk + ky) * kk + kx;
            const double* src = col + static_cast<std::size_t>(r) * g.out_h * g.out_w;
            for (int oy = 0; oy < g.out_h; ++oy) {
                const int iy = oy * g.stride - g.pad + ky;
                if (iy < 0 || iy >= g.in_h) continue;
                double* drow = plane + static_cast<std::size_t>(iy) * g.in_w;
                const double* srow = src + static_cast<std::size_t>(oy) * g.out_w;
                for (int ox = 0; ox < g.out_w; ++ox) {
                    const int ix = ox * g.stride - g.pad + kx;
                    if (ix < 0 || ix >= g.in_w) continue;
                    drow[ix] += srow[ox];
                }
            }
        }
    }
}

// One output row of max pooling for channel c.
inline void maxpool_row(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax,
                        int c, int oy) {
    const double* plane = in + static_cast<std::size_t>(c) * g.in_h * g.in_w;
    const std::size_t obase = (static_cast<std::size_t>(c) * g.out_h + oy) * g.out_w;
    const int y0 = oy * g.stride;
    const int y1 = std::min(y0 + g.kernel, g.in_h);
    for (int ox = 0; ox < g.out_w; ++ox) {
        const int x0 = ox * g.stride;
        const int x1 = std::min(x0 + g.kernel, g.in_w);
        double best = plane[y0 * g.in_w + x0];
        int best_idx = y0 * g.in_w + x0;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                const double v = plane[y * g.in_w + x];
                if (v > best) {
                    best = v;
                    best_idx = y * g.in_w + x;
                }
            }
        out[obase + ox] = best;
        argmax[obase + ox] = best_idx;
    }
}

// Scatter the routed gradient for one channel. Channels never share input
// elements, so per-channel units are conflict-free.
inline void maxpool_backward_channel(const PoolGeom& g, const double* out_grad,
                                     const std::int32_t* argmax, double* in_grad, int c) {
    double* plane = in_grad + static_cast<std::size_t>(c) * g.in_h * g.in_w;
    const std::size_t obase = static_cast<std::size_t>(c) * g.out_h * g.out_w;
    for (int o = 0; o < g.out_h * g.out_w; ++o) plane[argmax[obase + o]] += out_grad[obase + o];
}

inline std::uint8_t quantize(double v) {
    const long r = std::lround(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

// Sobel magnitude for one output row, all channels, replicate padding.
inline void sobel_row(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch, int y) {
    auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
    for (int x = 0; x < w; ++x) {
        for (int c = 0; c < nch; ++c) {
            double p[3][3];
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sy = clampi(y + dy, 0, h - 1);
                    const int sx = clampi(x + dx, 0, w - 1);
                    p[dy + 1][dx + 1] = in[(static_cast<std::size_t>(sy) * w + sx) * nch + c];
                }
            const double gx = (p[0][2] + 2.0 * p[1][2] + p[2][2]) - (p[0][0] + 2.0 * p[1][0] + p[2][0]);
            const double gy = (p[2][0] + 2.0 * p[2][1] + p[2][2]) - (p[0][0] + 2.0 * p[0][1] + p[0][2]);
            out[(static_cast<std::size_t>(y) * w + x) * nch + c] =
                quantize(std::sqrt(gx * gx + gy * gy));
        }
    }
}

// Bilinear resize for one output row, edge-clamped taps, half-pixel centers.
inline void resize_row(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                       int out_h, int oy) {
    const double sx_scale = static_cast<double>(in_w) / out_w;
    const double sy_scale = static_cast<double>(in_h) / out_h;
    const double sy = (oy + 0.5) * sy_scale - 0.5;
    const int y0 = static_cast<int>(std::floor(sy));
    const double fy = sy - y0;
    auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
    const int ty0 = clampi(y0, 0, in_h - 1);
    const int ty1 = clampi(y0 + 1, 0, in_h - 1);
    for (int ox = 0; ox < out_w; ++ox) {
        const double sx = (ox + 0.5) * sx_scale - 0.5;
        const int x0 = static_cast<int>(std::floor(sx));
        const double fx = sx - x0;
        const int tx0 = clampi(x0, 0, in_w - 1);
        const int tx1 = clampi(x0 + 1, 0, in_w - 1);
        for (int c = 0; c < 3; ++c) {
            const double v00 = in[(static_cast<std::size_t>(ty0) * in_w + tx0) * 3 + c];
            const double v01 = in[(static_cast<std::size_t>(ty0) * in_w + tx1) * 3 + c];
            const double v10 = in[(static_cast<std::size_t>(ty1) * in_w + tx0) * 3 + c];
            const double v11 = in[(static_cast<std::size_t>(ty1) * in_w + tx1) * 3 + c];
            const double v = v00 * (1.0 - fx) * (1.0 - fy) + v01 * fx * (1.0 - fy) +
                             v10 * (1.0 - fx) * fy + v11 * fx * fy;
            out[(static_cast<std::size_t>(oy) * out_w + ox) * 3 + c] = quantize(v);
        }
    }
}

// sin/cos of theta degrees, exact at the axis-aligned angles so rotations by
// 0 and 180 reproduce grid values bit-exactly.
inline void sincos_deg(double theta_deg, double& s, double& c) {
    double t = std::fmod(theta_deg, 360.0);
    if (t < 0) t += 360.0;
    if (t == 0.0) {
        s = 0.0;
        c = 1.0;
    } else if (t == 90.0) {
        s = 1.0;
        c = 0.0;
    } else if (t == 180.0) {
        s = 0.0;
        c = -1.0;
    } else if (t == 270.0) {
        s = -1.0;
        c = 0.0;
    } else {
        const double rad = t * M_PI / 180.0;
        s = std::sin(rad);
        c = std::cos(rad);
    }
}

// One output row of inverse-mapped rotation; out-of-source taps read black.
inline void rotate_row(const std::uint8_t* in, int w, int h, double sin_t, double cos_t,
                       std::uint8_t* out, int y) {
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    const double dy = y - cy;
    for (int x = 0; x < w; ++x) {
        const double dx = x - cx;
        // inverse rotation: R(-theta) * (dx, dy)
        const double sx = cos_t * dx + sin_t * dy + cx;
        const double sy = -sin_t * dx + cos_t * dy + cy;
        const int x0 = static_cast<int>(std::floor(sx));
        const int y0 = static_cast<int>(std::floor(sy));
        const double fx = sx - x0;
        const double fy = sy - y0;
        auto tap = [&](int tx, int ty, int c) -> double {
            if (tx < 0 || tx >= w || ty < 0 || ty >= h) return 0.0;
            return in[(static_cast<std::size_t>(ty) * w + tx) * 3 + c];
        };
        for (int c = 0; c < 3; ++c) {
            const double v = tap(x0, y0, c) * (1.0 - fx) * (1.0 - fy) +
                             tap(x0 + 1, y0, c) * fx * (1.0 - fy) +
                             tap(x0, y0 + 1, c) * (1.0 - fx) * fy + tap(x0 + 1, y0 + 1, c) * fx * fy;
            out[(static_cast<std::size_t>(y) * w + x) * 3 + c] = quantize(v);
        }
    }
}

} // namespace augbench::kern::detail
