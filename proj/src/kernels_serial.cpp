#include "kernels_detail.hpp"

namespace augbench::kern::serial {

using namespace detail;

void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c) {
    for (int j0 = 0; j0 < n; j0 += kGemmColTile) {
        const int j1 = std::min(j0 + kGemmColTile, n);
        for (int i0 = 0; i0 < m; i0 += kGemmRowBlock)
            gemm_task(n, k, a, b, c, k, i0, std::min(i0 + kGemmRowBlock, m), j0, j1);
    }
}

void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c) {
    for (int j0 = 0; j0 < n; j0 += kNtRowTile) {
        const int j1 = std::min(j0 + kNtRowTile, n);
        for (int k0 = 0; k0 < k; k0 += kNtColTile) {
            const int k1 = std::min(k0 + kNtColTile, k);
            for (int i = 0; i < m; ++i)
                gemm_nt_tile(k, a, b, c + static_cast<std::size_t>(i) * n, i, j0, j1, k0, k1);
        }
    }
}

void im2col(const ConvGeom& g, const double* in, double* col) {
    const int rows = g.in_c * g.kernel * g.kernel;
    for (int r = 0; r < rows; ++r) im2col_row(g, in, col, r);
}

void col2im_acc(const ConvGeom& g, const double* col, double* in_grad) {
    for (int ic = 0; ic < g.in_c; ++ic) col2im_channel(g, col, in_grad, ic);
}

void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax) {
    for (int c = 0; c < g.channels; ++c)
        for (int oy = 0; oy < g.out_h; ++oy) maxpool_row(g, in, out, argmax, c, oy);
}

void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad) {
    for (int c = 0; c < g.channels; ++c)
        maxpool_backward_channel(g, out_grad, argmax, in_grad, c);
}

void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch) {
    for (int y = 0; y < h; ++y) sobel_row(in, out, w, h, nch, y);
}

void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h) {
    for (int oy = 0; oy < out_h; ++oy) resize_row(in, in_w, in_h, out, out_w, out_h, oy);
}

void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out) {
    double s, c;
    sincos_deg(theta_deg, s, c);
    for (int y = 0; y < h; ++y) rotate_row(in, w, h, s, c, out, y);
}

} // namespace augbench::kern::serial
