#pragma once

#include <cstdint>

namespace augbench::kern {

// Data-parallel inner loops, each in two variants: a plain serial reference
// (kern::serial) and an OpenMP version (kern::omp). Both partition work so
// every output element is produced by exactly one iteration with a fixed
// accumulation order, so the two backends agree bitwise for any thread
// count. The unprefixed functions dispatch on parallel_enabled().
//
// tools/kernel_bench compares the two backends; tests/test_kernels.cpp
// asserts their bitwise equality.

/// Whether the dispatching wrappers use the OpenMP backend.
bool parallel_enabled();
void set_parallel(bool on);
/// Threads the OpenMP backend would use (1 when built without OpenMP).
int max_threads();
/// 0 = auto, 1 = serial backend, N > 1 = OpenMP with N threads.
void set_thread_count(int n);

// ---- dense linear algebra -------------------------------------------------

// C[m x n] += A[m x k] * B[k x n], all row-major.
namespace serial {
void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c);
}
namespace omp {
void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c);
}
void gemm_acc(int m, int n, int k, const double* a, const double* b, double* c);

// C[m x n] += A[m x k] * B^T where B is [n x k] row-major (rows dotted with rows).
namespace serial {
void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c);
}
namespace omp {
void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c);
}
void gemm_nt_acc(int m, int n, int k, const double* a, const double* b, double* c);

// ---- convolution lowering -------------------------------------------------

struct ConvGeom {
    int in_c, in_h, in_w;
    int kernel, stride, pad;
    int out_h, out_w;
};

// col is [in_c*kernel*kernel] x [out_h*out_w], row-major. Zero padding.
namespace serial {
void im2col(const ConvGeom& g, const double* in, double* col);
void col2im_acc(const ConvGeom& g, const double* col, double* in_grad);
}
namespace omp {
void im2col(const ConvGeom& g, const double* in, double* col);
void col2im_acc(const ConvGeom& g, const double* col, double* in_grad);
}
void im2col(const ConvGeom& g, const double* in, double* col);
void col2im_acc(const ConvGeom& g, const double* col, double* in_grad);

// ---- pooling ----------------------------------------------------------------

struct PoolGeom {
    int channels, in_h, in_w;
    int kernel, stride;
    int out_h, out_w; // ceil sizing; the last window may be border-truncated
};

// argmax holds, per output element, the flat in-plane index (y*in_w + x) of
// the maximum (first occurrence wins).
namespace serial {
void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax);
void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad);
}
namespace omp {
void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax);
void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad);
}
void maxpool_forward(const PoolGeom& g, const double* in, double* out, std::int32_t* argmax);
void maxpool_backward_acc(const PoolGeom& g, const double* out_grad, const std::int32_t* argmax,
                          double* in_grad);

// ---- 8-bit image kernels ----------------------------------------------------

// Sobel gradient magnitude per channel, replicate-edge padding,
// out = clamp(round(sqrt(gx^2 + gy^2))). Interleaved pixels, nch channels.
namespace serial {
void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch);
}
namespace omp {
void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch);
}
void sobel_magnitude_u8(const std::uint8_t* in, std::uint8_t* out, int w, int h, int nch);

// Bilinear resize, half-pixel-center mapping, edge-clamped taps.
// Interleaved RGB in both buffers.
namespace serial {
void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h);
}
namespace omp {
void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h);
}
void resize_bilinear_u8(const std::uint8_t* in, int in_w, int in_h, std::uint8_t* out, int out_w,
                        int out_h);

// Rotation about the pixel-grid center ((w-1)/2, (h-1)/2) by theta degrees
// (positive counter-clockwise), inverse mapping with bilinear interpolation;
// taps outside the source read as black. Output has the input's dimensions.
namespace serial {
void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out);
}
namespace omp {
void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out);
}
void rotate_bilinear_u8(const std::uint8_t* in, int w, int h, double theta_deg, std::uint8_t* out);

} // namespace augbench::kern
