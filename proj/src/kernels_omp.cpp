#include "kernels_detail.hpp"

namespace augbench::kern::omp {

using namespace detail;

void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c) {
    const int nib = div_up(m, kGemmRowBlock);
    const int njt = div_up(n, kGemmColTile);
    const int tasks = nib * njt;
#pragma omp parallel for schedule(static)
    for (int t = 0; t < tasks; ++t) {
        const int jt = t / nib; // column tile outer: consecutive tasks share B tiles
        const int ib = t % nib;
        const int i0 = ib * kGemmRowBlock;
        const int j0 = jt * kGemmColTile;
        gemm_task(n, k, a, b, c, k, i0, std::min(i0 + kGemmRowBlock, m), j0,
                  std::min(j0 + kGemmColTile, n));
    }
}

void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) gemm_nt_row(n, k, a, b, c, i);
}

void im2col(const ConvGeom& g, const double* in, double* col) {
    const int rows = g.in_c * g.kernel * g.kernel;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rows; ++r) im2col_row(g, in, col, r);
}

void col2im_acc(const ConvGeom& g, const double* col, double* in_grad) {
#pragma omp parallel for schedule(static)
    for (int ic = 0; ic < g.in_c; ++ic) col2im_channel(g, col, in_grad, ic);
}

void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax) {
    const int rows = g.channels * g.out_h;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < rows; ++r) maxpool_row(g, in, out, argmax, r / g.out_h, r % g.out_h);
}

void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < g.channels; ++c)
        maxpool_backward_channel(g, out_grad, argmax, in_grad, c);
}

void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch) {
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) sobel_row(in, out, w, h, nch, y);
}

void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h) {
#pragma omp parallel for schedule(static)
    for (int oy = 0; oy < out_h; ++oy) resize_row(in, in_w, in_h, out, out_w, out_h, oy);
}

void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out) {
    double s, c;
    sincos_deg(theta_deg, s, c);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) rotate_row(in, w, h, s, c, out, y);
}

} // namespace augbench::kern::omp
