#include "augbench/nn.hpp"

#include "augbench/errors.hpp"
#include "augbench/kernels.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

namespace augbench {

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are little-endian; big-endian hosts need byte swapping");

bool all_finite(const Tensor& t) {
    for (double v : t.data)
        if (!std::isfinite(v)) return false;
    return true;
}

LayerSpec LayerSpec::conv(int filters, int kernel, int stride, int padding, bool relu) {
    return LayerSpec{LayerKind::Conv, kernel, stride, padding, filters, relu};
}
LayerSpec LayerSpec::maxpool(int kernel, int stride) {
    return LayerSpec{LayerKind::MaxPool, kernel, stride, 0, 0, false};
}
LayerSpec LayerSpec::dense(int units, bool relu) {
    return LayerSpec{LayerKind::Dense, 0, 1, 0, units, relu};
}
LayerSpec LayerSpec::softmax() { return LayerSpec{LayerKind::Softmax, 0, 1, 0, 0, false}; }

std::vector<LayerSpec> reference_architecture() {
    return {
        LayerSpec::conv(30, 6, 2, 0), // 3x224x224 -> 30x110x110
        LayerSpec::maxpool(),         // -> 30x55x55
        LayerSpec::conv(40, 6, 2, 2), // -> 40x27x27
        LayerSpec::maxpool(),         // -> 40x13x13
        LayerSpec::conv(60, 3, 1, 0), // -> 60x11x11
        LayerSpec::dense(140, true),
        LayerSpec::dense(0, false), // class logits; units filled by build_model
        LayerSpec::softmax(),
    };
}

std::vector<LayerSpec> tiny_architecture() {
    return {
        LayerSpec::conv(8, 3, 1, 0), // 3x16x16 -> 8x14x14
        LayerSpec::maxpool(),        // -> 8x7x7
        LayerSpec::dense(32, true),
        LayerSpec::dense(0, false),
        LayerSpec::softmax(),
    };
}

namespace {

int conv_out_dim(int in, int kernel, int stride, int pad) {
    return (in + 2 * pad - kernel) / stride + 1;
}

int pool_out_dim(int in, int kernel, int stride) {
    if (in < kernel) return 1;
    return (in - kernel + stride - 1) / stride + 1; // ceil((in-k)/s) + 1
}

kern::ConvGeom conv_geom(const std::array<int, 3>& in, const LayerSpec& spec) {
    kern::ConvGeom g;
    g.in_c = in[0];
    g.in_h = in[1];
    g.in_w = in[2];
    g.kernel = spec.kernel;
    g.stride = spec.stride;
    g.pad = spec.padding;
    g.out_h = conv_out_dim(in[1], spec.kernel, spec.stride, spec.padding);
    g.out_w = conv_out_dim(in[2], spec.kernel, spec.stride, spec.padding);
    return g;
}

std::array<int, 3> tensor_chw(const Tensor& t) {
    if (t.shape.size() == 3) return {t.shape[0], t.shape[1], t.shape[2]};
    throw ShapeMismatchError("expected a CHW tensor, got rank " + std::to_string(t.shape.size()));
}

} // namespace

std::vector<std::array<int, 3>> shape_chain(const CnnModel& model) {
    std::vector<std::array<int, 3>> chain;
    chain.push_back(model.input_shape);
    std::array<int, 3> cur = model.input_shape;
    for (const auto& layer : model.layers) {
        const LayerSpec& s = layer.spec;
        switch (s.kind) {
            case LayerKind::Conv: {
                cur = {s.out_channels, conv_out_dim(cur[1], s.kernel, s.stride, s.padding),
                       conv_out_dim(cur[2], s.kernel, s.stride, s.padding)};
                break;
            }
            case LayerKind::MaxPool: {
                cur = {cur[0], pool_out_dim(cur[1], s.kernel, s.stride),
                       pool_out_dim(cur[2], s.kernel, s.stride)};
                break;
            }
            case LayerKind::Dense: {
                cur = {1, 1, s.out_channels};
                break;
            }
            case LayerKind::Softmax: break;
        }
        chain.push_back(cur);
    }
    return chain;
}

Tensor xavier_init(const std::vector<int>& shape, int fan_in, int fan_out, Rng& rng) {
    Tensor t = Tensor::zeros(shape);
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& v : t.data) v = (2.0 * rng.uniform01() - 1.0) * bound;
    return t;
}

CnnModel build_model(std::array<int, 3> input_shape, int class_count,
                     const std::vector<LayerSpec>& specs, InitScheme init, Rng& rng) {
    if (specs.empty() || specs.back().kind != LayerKind::Softmax)
        throw ShapeMismatchError("the final layer must be softmax");

    CnnModel model;
    model.input_shape = input_shape;
    model.class_count = class_count;

    std::array<int, 3> cur = input_shape;
    for (std::size_t li = 0; li < specs.size(); ++li) {
        LayerSpec spec = specs[li];
        Layer layer;
        switch (spec.kind) {
            case LayerKind::Conv: {
                const int oh = conv_out_dim(cur[1], spec.kernel, spec.stride, spec.padding);
                const int ow = conv_out_dim(cur[2], spec.kernel, spec.stride, spec.padding);
                if (oh < 1 || ow < 1)
                    throw ShapeMismatchError("conv layer " + std::to_string(li) +
                                             " produces empty output");
                const int fan_in = cur[0] * spec.kernel * spec.kernel;
                const int fan_out = spec.out_channels * spec.kernel * spec.kernel;
                layer.w = init == InitScheme::Xavier
                              ? xavier_init({spec.out_channels, cur[0], spec.kernel, spec.kernel},
                                            fan_in, fan_out, rng)
                              : Tensor::zeros({spec.out_channels, cur[0], spec.kernel, spec.kernel});
                if (init == InitScheme::Gaussian)
                    for (auto& v : layer.w.data) v = rng.gaussian(0.0, 0.01);
                layer.b = Tensor::zeros({spec.out_channels});
                cur = {spec.out_channels, oh, ow};
                break;
            }
            case LayerKind::MaxPool: {
                cur = {cur[0], pool_out_dim(cur[1], spec.kernel, spec.stride),
                       pool_out_dim(cur[2], spec.kernel, spec.stride)};
                break;
            }
            case LayerKind::Dense: {
                if (spec.out_channels == 0) spec.out_channels = class_count; // logits layer
                const int fan_in = cur[0] * cur[1] * cur[2];
                layer.w = init == InitScheme::Xavier
                              ? xavier_init({spec.out_channels, fan_in}, fan_in, spec.out_channels,
                                            rng)
                              : Tensor::zeros({spec.out_channels, fan_in});
                if (init == InitScheme::Gaussian)
                    for (auto& v : layer.w.data) v = rng.gaussian(0.0, 0.01);
                layer.b = Tensor::zeros({spec.out_channels});
                cur = {1, 1, spec.out_channels};
                break;
            }
            case LayerKind::Softmax: {
                if (cur[0] * cur[1] * cur[2] != class_count)
                    throw ShapeMismatchError("softmax input size " +
                                             std::to_string(cur[0] * cur[1] * cur[2]) +
                                             " != class count " + std::to_string(class_count));
                break;
            }
        }
        layer.spec = spec;
        model.layers.push_back(std::move(layer));
    }
    return model;
}

// ---- single layer forward ----------------------------------------------------

Tensor conv2d_forward(const Tensor& input, const Layer& layer) {
    const auto in = tensor_chw(input);
    if (layer.w.shape.size() != 4 || layer.w.shape[1] != in[0])
        throw ShapeMismatchError("conv weight/input channel mismatch");
    const kern::ConvGeom g = conv_geom(in, layer.spec);
    if (g.out_h < 1 || g.out_w < 1) throw ShapeMismatchError("conv output would be empty");

    const int crows = g.in_c * g.kernel * g.kernel;
    std::vector<double> col(static_cast<std::size_t>(crows) * g.out_h * g.out_w);
    kern::im2col(g, input.data.data(), col.data());

    const int oc = layer.spec.out_channels;
    Tensor out = Tensor::zeros({oc, g.out_h, g.out_w});
    kern::gemm_acc(oc, g.out_h * g.out_w, crows, layer.w.data.data(), col.data(), out.data.data());
    for (int o = 0; o < oc; ++o) {
        double* plane = out.data.data() + static_cast<std::size_t>(o) * g.out_h * g.out_w;
        for (int j = 0; j < g.out_h * g.out_w; ++j) plane[j] += layer.b.data[o];
    }
    return out;
}

Tensor maxpool_forward(const Tensor& input, const LayerSpec& spec,
                       std::vector<std::int32_t>* argmax) {
    const auto in = tensor_chw(input);
    kern::PoolGeom g;
    g.channels = in[0];
    g.in_h = in[1];
    g.in_w = in[2];
    g.kernel = spec.kernel;
    g.stride = spec.stride;
    g.out_h = pool_out_dim(in[1], spec.kernel, spec.stride);
    g.out_w = pool_out_dim(in[2], spec.kernel, spec.stride);

    Tensor out = Tensor::zeros({g.channels, g.out_h, g.out_w});
    std::vector<std::int32_t> local;
    std::vector<std::int32_t>& idx = argmax ? *argmax : local;
    idx.assign(out.data.size(), 0);
    kern::maxpool_forward(g, input.data.data(), out.data.data(), idx.data());
    return out;
}

Tensor dense_forward(const Tensor& input, const Layer& layer) {
    const int in_n = static_cast<int>(input.size());
    const int out_n = layer.spec.out_channels;
    if (layer.w.shape != std::vector<int>{out_n, in_n})
        throw ShapeMismatchError("dense weight shape does not match input size " +
                                 std::to_string(in_n));
    Tensor out = Tensor::zeros({out_n});
    for (int o = 0; o < out_n; ++o) {
        const double* wrow = layer.w.data.data() + static_cast<std::size_t>(o) * in_n;
        double acc = layer.b.data[o];
        for (int i = 0; i < in_n; ++i) acc += wrow[i] * input.data[i];
        out.data[o] = acc;
    }
    return out;
}

Tensor relu(const Tensor& input) {
    Tensor out = input;
    for (auto& v : out.data) v = v > 0.0 ? v : 0.0;
    return out;
}

Tensor softmax_forward(const Tensor& logits) {
    Tensor out = logits;
    const double mx = *std::max_element(out.data.begin(), out.data.end());
    double sum = 0.0;
    for (auto& v : out.data) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (auto& v : out.data) v /= sum;
    return out;
}

double cross_entropy(const Tensor& logits, int label) {
    const double mx = *std::max_element(logits.data.begin(), logits.data.end());
    double sum = 0.0;
    for (double v : logits.data) sum += std::exp(v - mx);
    return mx + std::log(sum) - logits.data[static_cast<std::size_t>(label)];
}

// ---- whole network -------------------------------------------------------------

Tensor forward(const CnnModel& model, const Tensor& input, ForwardCache* cache) {
    const std::size_t nl = model.layers.size();
    if (cache) {
        cache->outputs.assign(nl + 1, Tensor{});
        cache->preacts.assign(nl, Tensor{});
        cache->cols.assign(nl, Tensor{});
        cache->argmaxes.assign(nl, {});
        cache->outputs[0] = input;
    }

    Tensor cur = input;
    for (std::size_t li = 0; li < nl; ++li) {
        const Layer& layer = model.layers[li];
        switch (layer.spec.kind) {
            case LayerKind::Conv: {
                // keep the im2col buffer for the backward pass
                const auto in = tensor_chw(cur);
                const kern::ConvGeom g = conv_geom(in, layer.spec);
                if (g.out_h < 1 || g.out_w < 1)
                    throw ShapeMismatchError("conv output would be empty");
                const int crows = g.in_c * g.kernel * g.kernel;
                Tensor col = Tensor::zeros({crows, g.out_h * g.out_w});
                kern::im2col(g, cur.data.data(), col.data.data());
                Tensor pre = Tensor::zeros({layer.spec.out_channels, g.out_h, g.out_w});
                kern::gemm_acc(layer.spec.out_channels, g.out_h * g.out_w, crows,
                               layer.w.data.data(), col.data.data(), pre.data.data());
                for (int o = 0; o < layer.spec.out_channels; ++o) {
                    double* plane = pre.data.data() + static_cast<std::size_t>(o) * g.out_h * g.out_w;
                    for (int j = 0; j < g.out_h * g.out_w; ++j) plane[j] += layer.b.data[o];
                }
                Tensor out = layer.spec.relu ? relu(pre) : pre;
                if (cache) {
                    cache->cols[li] = std::move(col);
                    cache->preacts[li] = std::move(pre);
                }
                cur = std::move(out);
                break;
            }
            case LayerKind::MaxPool: {
                std::vector<std::int32_t> argmax;
                cur = maxpool_forward(cur, layer.spec, &argmax);
                if (cache) cache->argmaxes[li] = std::move(argmax);
                break;
            }
            case LayerKind::Dense: {
                Tensor flat = cur;
                flat.shape = {static_cast<int>(flat.size())};
                Tensor pre = dense_forward(flat, layer);
                Tensor out = layer.spec.relu ? relu(pre) : pre;
                if (cache) cache->preacts[li] = std::move(pre);
                cur = std::move(out);
                break;
            }
            case LayerKind::Softmax: {
                cur = softmax_forward(cur);
                break;
            }
        }
        if (cache) cache->outputs[li + 1] = cur;
    }
    return cur;
}

ParamGrads ParamGrads::zeros_like(const CnnModel& model) {
    ParamGrads g;
    for (const auto& layer : model.layers) {
        g.w.push_back(Tensor::zeros(layer.w.shape));
        g.b.push_back(Tensor::zeros(layer.b.shape));
    }
    return g;
}

double backward(const CnnModel& model, const ForwardCache& cache, int label, ParamGrads& grads) {
    const std::size_t nl = model.layers.size();
    if (nl == 0 || model.layers.back().spec.kind != LayerKind::Softmax)
        throw ShapeMismatchError("backward requires a softmax-terminated model");

    const Tensor& logits = cache.outputs[nl - 1];
    const Tensor& probs = cache.outputs[nl];
    const double loss = cross_entropy(logits, label);

    // combined softmax + cross-entropy gradient
    Tensor grad = probs;
    grad.data[static_cast<std::size_t>(label)] -= 1.0;

    for (std::size_t li = nl - 1; li-- > 0;) {
        const Layer& layer = model.layers[li];
        const Tensor& lin = cache.outputs[li];
        switch (layer.spec.kind) {
            case LayerKind::Dense: {
                if (layer.spec.relu) {
                    const Tensor& pre = cache.preacts[li];
                    for (std::size_t i = 0; i < grad.data.size(); ++i)
                        if (pre.data[i] <= 0.0) grad.data[i] = 0.0;
                }
                const int out_n = layer.spec.out_channels;
                const int in_n = static_cast<int>(lin.size());
                Tensor gin = Tensor::zeros(lin.shape);
                double* gw = grads.w[li].data.data();
                for (int o = 0; o < out_n; ++o) {
                    const double go = grad.data[o];
                    grads.b[li].data[o] += go;
                    const double* x = lin.data.data();
                    double* gwrow = gw + static_cast<std::size_t>(o) * in_n;
                    for (int i = 0; i < in_n; ++i) gwrow[i] += go * x[i];
                    const double* wrow = layer.w.data.data() + static_cast<std::size_t>(o) * in_n;
                    for (int i = 0; i < in_n; ++i) gin.data[i] += go * wrow[i];
                }
                grad = std::move(gin);
                break;
            }
            case LayerKind::MaxPool: {
                const auto in = tensor_chw(lin);
                kern::PoolGeom g;
                g.channels = in[0];
                g.in_h = in[1];
                g.in_w = in[2];
                g.kernel = layer.spec.kernel;
                g.stride = layer.spec.stride;
                g.out_h = pool_out_dim(in[1], layer.spec.kernel, layer.spec.stride);
                g.out_w = pool_out_dim(in[2], layer.spec.kernel, layer.spec.stride);
                Tensor gin = Tensor::zeros(lin.shape);
                kern::maxpool_backward_acc(g, grad.data.data(), cache.argmaxes[li].data(),
                                           gin.data.data());
                grad = std::move(gin);
                break;
            }
            case LayerKind::Conv: {
                if (layer.spec.relu) {
                    const Tensor& pre = cache.preacts[li];
                    for (std::size_t i = 0; i < grad.data.size(); ++i)
                        if (pre.data[i] <= 0.0) grad.data[i] = 0.0;
                }
                const auto in = tensor_chw(lin);
                const kern::ConvGeom g = conv_geom(in, layer.spec);
                const int oc = layer.spec.out_channels;
                const int crows = g.in_c * g.kernel * g.kernel;
                const int ospatial = g.out_h * g.out_w;

                for (int o = 0; o < oc; ++o) {
                    const double* gplane = grad.data.data() + static_cast<std::size_t>(o) * ospatial;
                    double acc = 0.0;
                    for (int j = 0; j < ospatial; ++j) acc += gplane[j];
                    grads.b[li].data[o] += acc;
                }
                // dW = dOut x col^T
                kern::gemm_nt_acc(oc, crows, ospatial, grad.data.data(),
                                  cache.cols[li].data.data(), grads.w[li].data.data());
                if (li == 0) break; // nothing below consumes the input gradient
                // dcol = W^T x dOut
                std::vector<double> wt(static_cast<std::size_t>(crows) * oc);
                for (int o = 0; o < oc; ++o)
                    for (int r = 0; r < crows; ++r)
                        wt[static_cast<std::size_t>(r) * oc + o] =
                            layer.w.data[static_cast<std::size_t>(o) * crows + r];
                Tensor dcol = Tensor::zeros({crows, ospatial});
                kern::gemm_acc(crows, ospatial, oc, wt.data(), grad.data.data(), dcol.data.data());
                Tensor gin = Tensor::zeros(lin.shape);
                kern::col2im_acc(g, dcol.data.data(), gin.data.data());
                grad = std::move(gin);
                break;
            }
            case LayerKind::Softmax:
                throw ShapeMismatchError("softmax must be the final layer");
        }
    }
    return loss;
}

ParamGrads compute_gradients(const CnnModel& model, const std::vector<Tensor>& batch,
                             const std::vector<int>& labels, double l2) {
    if (batch.size() != labels.size() || batch.empty())
        throw ShapeMismatchError("batch and label counts differ or are empty");

    ParamGrads grads = ParamGrads::zeros_like(model);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        ForwardCache cache;
        forward(model, batch[i], &cache);
        const double loss = backward(model, cache, labels[i], grads);
        if (!std::isfinite(loss))
            throw NumericalFailureError("non-finite loss on batch item " + std::to_string(i));
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (std::size_t li = 0; li < model.layers.size(); ++li) {
        for (auto& v : grads.w[li].data) v *= inv;
        for (auto& v : grads.b[li].data) v *= inv;
        const auto& w = model.layers[li].w.data;
        for (std::size_t i = 0; i < w.size(); ++i) grads.w[li].data[i] += l2 * w[i];
        if (!all_finite(grads.w[li]) || !all_finite(grads.b[li]))
            throw NumericalFailureError("non-finite gradient in layer " + std::to_string(li));
    }
    return grads;
}

OptimizerState OptimizerState::for_model(const CnnModel& model, double lr, double momentum,
                                         double l2) {
    OptimizerState s;
    s.learning_rate = lr;
    s.momentum = momentum;
    s.l2 = l2;
    for (const auto& layer : model.layers) {
        s.vw.push_back(Tensor::zeros(layer.w.shape));
        s.vb.push_back(Tensor::zeros(layer.b.shape));
    }
    return s;
}

namespace {

void nesterov_update(std::vector<double>& w, const std::vector<double>& g, std::vector<double>& v,
                     double mu, double eta) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        v[i] = mu * v[i] - eta * g[i];
        w[i] += mu * v[i] - eta * g[i];
    }
}

} // namespace

void nesterov_step(CnnModel& model, const ParamGrads& grads, OptimizerState& state) {
    for (std::size_t li = 0; li < model.layers.size(); ++li) {
        nesterov_update(model.layers[li].w.data, grads.w[li].data, state.vw[li].data,
                        state.momentum, state.learning_rate);
        nesterov_update(model.layers[li].b.data, grads.b[li].data, state.vb[li].data,
                        state.momentum, state.learning_rate);
    }
}

Tensor assemble_input(const RawImage& img, int res) {
    Tensor out = Tensor::zeros({3, res, res});
    const int copy_w = std::min(img.width, res);
    const int copy_h = std::min(img.height, res);
    const int src_x = img.width > res ? (img.width - res) / 2 : 0;
    const int src_y = img.height > res ? (img.height - res) / 2 : 0;
    const int dst_x = img.width < res ? (res - img.width) / 2 : 0;
    const int dst_y = img.height < res ? (res - img.height) / 2 : 0;
    for (int c = 0; c < 3; ++c) {
        double* plane = out.data.data() + static_cast<std::size_t>(c) * res * res;
        for (int y = 0; y < copy_h; ++y)
            for (int x = 0; x < copy_w; ++x)
                plane[(dst_y + y) * res + dst_x + x] = img.at(src_x + x, src_y + y, c) / 255.0;
    }
    return out;
}

TrainTrace train(CnnModel& model, const std::vector<TrainItem>& items, const TrainOptions& opts) {
    TrainTrace trace;
    if (items.empty() || opts.epochs <= 0) return trace;

    const int res = model.input_shape[1];
    OptimizerState state =
        OptimizerState::for_model(model, opts.learning_rate, opts.momentum, opts.l2);
    Rng shuffle_base = Rng(opts.seed).fork(rng_salt::shuffle);

    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < opts.epochs; ++epoch) {
        Rng rng = shuffle_base.fork(static_cast<std::uint64_t>(epoch));
        rng.shuffle(order);

        double epoch_loss = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += opts.minibatch) {
            const std::size_t end = std::min(order.size(), start + opts.minibatch);
            const std::size_t bsize = end - start;
            ParamGrads grads = ParamGrads::zeros_like(model);
            double batch_loss = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                const TrainItem& item = items[order[i]];
                const Tensor input = assemble_input(*item.image, res);
                ForwardCache cache;
                const Tensor probs = forward(model, input, &cache);
                std::size_t arg = 0;
                for (std::size_t k = 1; k < probs.data.size(); ++k)
                    if (probs.data[k] > probs.data[arg]) arg = k;
                if (static_cast<int>(arg) == item.label) ++correct;
                batch_loss += backward(model, cache, item.label, grads);
            }
            if (!std::isfinite(batch_loss))
                throw NumericalFailureError("non-finite loss at epoch " + std::to_string(epoch) +
                                            " batch " + std::to_string(start / opts.minibatch));
            epoch_loss += batch_loss;

            const double inv = 1.0 / static_cast<double>(bsize);
            for (std::size_t li = 0; li < model.layers.size(); ++li) {
                for (auto& v : grads.w[li].data) v *= inv;
                for (auto& v : grads.b[li].data) v *= inv;
                const auto& w = model.layers[li].w.data;
                for (std::size_t i = 0; i < w.size(); ++i) grads.w[li].data[i] += opts.l2 * w[i];
            }
            if (opts.grad_norm_clip) {
                double sq = 0.0;
                for (std::size_t li = 0; li < model.layers.size(); ++li) {
                    for (double v : grads.w[li].data) sq += v * v;
                    for (double v : grads.b[li].data) sq += v * v;
                }
                const double norm = std::sqrt(sq);
                if (norm > opts.clip_norm) {
                    const double scale = opts.clip_norm / norm;
                    for (std::size_t li = 0; li < model.layers.size(); ++li) {
                        for (auto& v : grads.w[li].data) v *= scale;
                        for (auto& v : grads.b[li].data) v *= scale;
                    }
                }
            }
            nesterov_step(model, grads, state);
        }
        trace.epochs.push_back(EpochStats{epoch, epoch_loss / static_cast<double>(items.size()),
                                          static_cast<double>(correct) /
                                              static_cast<double>(items.size())});
    }
    return trace;
}

std::string trace_to_jsonl(const TrainTrace& trace) {
    std::string out;
    for (const auto& e : trace.epochs) {
        nlohmann::ordered_json line;
        line["epoch"] = e.epoch;
        line["loss"] = e.loss;
        line["train_top1"] = e.train_top1;
        out += line.dump();
        out += '\n';
    }
    return out;
}

// ---- checkpoint -----------------------------------------------------------------

namespace {

constexpr char kCheckpointMagic[8] = {'A', 'U', 'G', 'B', 'N', 'E', 'T', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& what) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw ParseError("checkpoint truncated while reading " + what);
    return v;
}

} // namespace

void save_checkpoint(const CnnModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write checkpoint " + path.string());
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    write_pod(out, kCheckpointVersion);
    write_pod(out, static_cast<std::int32_t>(model.class_count));
    for (int d : model.input_shape) write_pod(out, static_cast<std::int32_t>(d));
    write_pod(out, static_cast<std::uint32_t>(model.layers.size()));
    for (const auto& layer : model.layers) {
        write_pod(out, static_cast<std::uint8_t>(layer.spec.kind));
        write_pod(out, static_cast<std::uint8_t>(layer.spec.relu ? 1 : 0));
        write_pod(out, static_cast<std::int32_t>(layer.spec.kernel));
        write_pod(out, static_cast<std::int32_t>(layer.spec.stride));
        write_pod(out, static_cast<std::int32_t>(layer.spec.padding));
        write_pod(out, static_cast<std::int32_t>(layer.spec.out_channels));
    }
    for (const auto& layer : model.layers) {
        write_pod(out, static_cast<std::uint64_t>(layer.w.data.size()));
        out.write(reinterpret_cast<const char*>(layer.w.data.data()),
                  static_cast<std::streamsize>(layer.w.data.size() * sizeof(double)));
        write_pod(out, static_cast<std::uint64_t>(layer.b.data.size()));
        out.write(reinterpret_cast<const char*>(layer.b.data.data()),
                  static_cast<std::streamsize>(layer.b.data.size() * sizeof(double)));
    }
    if (!out) throw IoError("write failed for checkpoint " + path.string());
}

CnnModel load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError("cannot open checkpoint " + path.string());

    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
        throw ParseError("not a model checkpoint: " + path.string());
    const auto version = read_pod<std::uint32_t>(in, "version");
    if (version != kCheckpointVersion)
        throw ParseError("unsupported checkpoint version " + std::to_string(version));

    const auto class_count = read_pod<std::int32_t>(in, "class count");
    std::array<int, 3> input_shape{};
    for (int& d : input_shape) d = read_pod<std::int32_t>(in, "input shape");
    const auto n_layers = read_pod<std::uint32_t>(in, "layer count");

    std::vector<LayerSpec> specs;
    for (std::uint32_t i = 0; i < n_layers; ++i) {
        LayerSpec spec;
        spec.kind = static_cast<LayerKind>(read_pod<std::uint8_t>(in, "layer kind"));
        spec.relu = read_pod<std::uint8_t>(in, "relu flag") != 0;
        spec.kernel = read_pod<std::int32_t>(in, "kernel");
        spec.stride = read_pod<std::int32_t>(in, "stride");
        spec.padding = read_pod<std::int32_t>(in, "padding");
        spec.out_channels = read_pod<std::int32_t>(in, "out channels");
        specs.push_back(spec);
    }

    Rng dummy(0); // parameters are loaded below; init values are discarded
    CnnModel model = build_model(input_shape, class_count, specs, InitScheme::Gaussian, dummy);
    for (auto& layer : model.layers) {
        const auto wlen = read_pod<std::uint64_t>(in, "weight blob size");
        if (wlen != layer.w.data.size())
            throw ParseError("checkpoint weight blob size mismatch in " + path.string());
        in.read(reinterpret_cast<char*>(layer.w.data.data()),
                static_cast<std::streamsize>(wlen * sizeof(double)));
        const auto blen = read_pod<std::uint64_t>(in, "bias blob size");
        if (blen != layer.b.data.size())
            throw ParseError("checkpoint bias blob size mismatch in " + path.string());
        in.read(reinterpret_cast<char*>(layer.b.data.data()),
                static_cast<std::streamsize>(blen * sizeof(double)));
        if (!in) throw ParseError("checkpoint truncated in parameter blobs");
    }
    return model;
}

} // namespace augbench
