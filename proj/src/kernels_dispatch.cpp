#include "augbench/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace augbench::kern {

namespace {
std::atomic<bool> g_parallel{
#ifdef _OPENMP
    true
#else
    false
#endif
};
} // namespace

bool parallel_enabled() {
#ifdef _OPENMP
    return g_parallel.load(std::memory_order_relaxed);
#else
    return false;
#endif
}

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return parallel_enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

void set_thread_count(int n) {
    if (n == 1) {
        set_parallel(false);
        return;
    }
#ifdef _OPENMP
    set_parallel(true);
    if (n > 1) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

#ifdef _OPENMP
#define AUGBENCH_DISPATCH(fn, ...) \
    (parallel_enabled() ? omp::fn(__VA_ARGS__) : serial::fn(__VA_ARGS__))
#else
#define AUGBENCH_DISPATCH(fn, ...) serial::fn(__VA_ARGS__)
#endif

void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c) {
    AUGBENCH_DISPATCH(gemm_acc, m, n, k, a, b, c);
}

void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c) {
    AUGBENCH_DISPATCH(gemm_nt_acc, m, n, k, a, b, c);
}

void im2col(const ConvGeom& g, const double* in, double* col) {
    AUGBENCH_DISPATCH(im2col, g, in, col);
}

void col2im_acc(const ConvGeom& g, const double* col, double* in_grad) {
    AUGBENCH_DISPATCH(col2im_acc, g, col, in_grad);
}

void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax) {
    AUGBENCH_DISPATCH(maxpool_forward, g, in, out, argmax);
}

void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad) {
    AUGBENCH_DISPATCH(maxpool_backward_acc, g, out_grad, argmax, in_grad);
}

void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch) {
    AUGBENCH_DISPATCH(sobel_magnitude_u8, in, out, w, h, nch);
}

void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h) {
    AUGBENCH_DISPATCH(resize_bilinear_u8, in, in_w, in_h, out, out_w, out_h);
}

void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out) {
    AUGBENCH_DISPATCH(rotate_bilinear_u8, in, w, h, theta_deg, out);
}

} // namespace augbench::kern
