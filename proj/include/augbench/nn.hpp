#pragma once

#include "augbench/image.hpp"
#include "augbench/rng.hpp"
#include "augbench/tensor.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace augbench {

enum class LayerKind : std::uint8_t { Conv, MaxPool, Dense, Softmax };

struct LayerSpec {
    LayerKind kind = LayerKind::Conv;
    int kernel = 0;
    int stride = 1;
    int padding = 0;
    int out_channels = 0; // conv: filters, dense: units
    bool relu = false;

    static LayerSpec conv(int filters, int kernel, int stride, int padding, bool relu = true);
    static LayerSpec maxpool(int kernel = 3, int stride = 2);
    static LayerSpec dense(int units, bool relu);
    static LayerSpec softmax();
};

struct Layer {
    LayerSpec spec;
    Tensor w; // conv: [oc, ic, k, k]; dense: [out, in]; empty otherwise
    Tensor b; // [oc] / [out]
};

enum class InitScheme { Xavier, Gaussian };

struct CnnModel {
    std::array<int, 3> input_shape{}; // C, H, W
    int class_count = 0;
    std::vector<Layer> layers;
};

/// The paper's 5-trainable-layer network; produces the feature-map chain
/// 30x110x110 -> 30x55x55 -> 40x27x27 -> 40x13x13 -> 60x11x11 -> 140 -> classes
/// from a 3x224x224 input.
std::vector<LayerSpec> reference_architecture();

/// Scaled-down variant for 3x16x16 inputs, used by small-scale fixtures.
std::vector<LayerSpec> tiny_architecture();

/// Validates the shape chain and initializes parameters (biases zero).
/// Throws ShapeMismatchError when a layer's output shape is invalid.
CnnModel build_model(std::array<int, 3> input_shape, int class_count,
                     const std::vector<LayerSpec>& specs, InitScheme init, Rng& rng);

/// Output C,H,W (or 1,1,units) of every layer, input included as element 0.
std::vector<std::array<int, 3>> shape_chain(const CnnModel& model);

/// Uniform draws in +-sqrt(6 / (fan_in + fan_out)).
Tensor xavier_init(const std::vector<int>& shape, int fan_in, int fan_out, Rng& rng);

// ---- single layer operations (exposed for tests and gradient checks) ------

Tensor conv2d_forward(const Tensor& input, const Layer& layer);
Tensor maxpool_forward(const Tensor& input, const LayerSpec& spec, std::vector<std::int32_t>* argmax);
Tensor dense_forward(const Tensor& input, const Layer& layer);
Tensor relu(const Tensor& input);
Tensor softmax_forward(const Tensor& logits);

// ---- whole network ----------------------------------------------------------

struct ForwardCache {
    std::vector<Tensor> outputs; // outputs[0] = input, outputs[i] = layer i-1 output
    std::vector<Tensor> preacts; // pre-ReLU values for conv/dense layers
    std::vector<Tensor> cols;    // im2col buffers for conv layers
    std::vector<std::vector<std::int32_t>> argmaxes;
};

/// Forward pass; returns class probabilities. cache may be null.
Tensor forward(const CnnModel& model, const Tensor& input, ForwardCache* cache);

/// Cross-entropy of one cached forward pass against its label.
double cross_entropy(const Tensor& logits, int label);

struct ParamGrads {
    std::vector<Tensor> w, b; // aligned with model.layers

    static ParamGrads zeros_like(const CnnModel& model);
};

/// Accumulates one sample's CE gradient (unscaled) into grads; returns the
/// sample loss. Requires the cache of a forward pass on this sample.
double backward(const CnnModel& model, const ForwardCache& cache, int label, ParamGrads& grads);

/// Gradients of the mean cross-entropy over the batch; the L2 term adds
/// l2 * w to every weight gradient (never to biases).
/// Throws NumericalFailureError on non-finite values.
ParamGrads compute_gradients(const CnnModel& model, const std::vector<Tensor>& batch,
                             const std::vector<int>& labels, double l2);

struct OptimizerState {
    double learning_rate = 0.01;
    double momentum = 0.90;
    double l2 = 5e-4;
    std::vector<Tensor> vw, vb; // velocities, shapes mirror parameters

    static OptimizerState for_model(const CnnModel& model, double lr, double momentum, double l2);
};

/// v <- mu*v - eta*g;  w <- w + mu*v - eta*g
void nesterov_step(CnnModel& model, const ParamGrads& grads, OptimizerState& state);

// ---- training ----------------------------------------------------------------

struct TrainOptions {
    int epochs = 30;
    int minibatch = 16;
    double learning_rate = 0.01;
    double momentum = 0.90;
    double l2 = 5e-4;
    std::uint64_t seed = 0;
    bool grad_norm_clip = false; // alternative regularization reading, off by default
    double clip_norm = 1.0;
};

struct EpochStats {
    int epoch;
    double loss;       // mean CE over the epoch's training items
    double train_top1; // accuracy on training batches as seen during the epoch
};

struct TrainTrace {
    std::vector<EpochStats> epochs;
};

struct TrainItem {
    const RawImage* image;
    int label;
};

/// Center-crop or zero-pad to res x res, then scale channels to [0, 1], CHW.
Tensor assemble_input(const RawImage& img, int res);

/// Minibatch SGD with Nesterov momentum. Deterministic for a fixed seed.
/// Throws NumericalFailureError with epoch/batch context.
TrainTrace train(CnnModel& model, const std::vector<TrainItem>& items, const TrainOptions& opts);

/// Loss trace as JSON lines {"epoch": n, "loss": x, "train_top1": y}.
std::string trace_to_jsonl(const TrainTrace& trace);

// ---- checkpoint ---------------------------------------------------------------

/// Versioned header + layer specs + raw little-endian float64 parameter blobs.
void save_checkpoint(const CnnModel& model, const std::filesystem::path& path);
CnnModel load_checkpoint(const std::filesystem::path& path);

} // namespace augbench
