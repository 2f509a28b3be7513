/*
 *  Copyright 2026 The docsr Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include "docsr/tensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace docsr {

enum class Activation : std::uint8_t { None = 0, ReLU = 1, PReLU = 2 };

const char* to_string(Activation a);

/// Hyper-parameters of one convolution layer. Kernels are square; stride and
/// zero padding are carried so the output-shape rule holds in full generality
/// even though every layer of the super-resolution net uses stride 1, pad 0.
struct ConvSpec {
    int in_channels = 1;
    int out_channels = 1;
    int kernel = 1;
    int stride = 1;
    int zero_pad = 0;
    Activation activation = Activation::None;

    bool operator==(const ConvSpec&) const = default;
};

/// Output dims of a convolution: (in - kernel + 2 * pad) / stride + 1 per axis.
/// Throws IndivisibleStride when the division is inexact and NonPositiveOutput
/// when a dim would be < 1.
Shape3 conv_output_shape(int in_h, int in_w, const ConvSpec& spec);

/// One group of trainable buffers. The same struct holds parameter values,
/// their gradients and their momentum velocities, so shapes always agree.
///
/// weights are laid out [dy][dx][in][out]; slopes is empty unless the layer
/// uses PReLU.
template <typename T>
struct ParamSet {
    std::vector<T> weights;
    std::vector<T> biases;
    std::vector<T> slopes;

    std::size_t size() const { return weights.size() + biases.size() + slopes.size(); }
    void zero();
    void add(const ParamSet& other);
    bool same_shape(const ParamSet& other) const;
    bool operator==(const ParamSet&) const = default;
};

template <typename T>
class LayerParams {
public:
    LayerParams() = default;
    explicit LayerParams(const ConvSpec& spec);

    int kernel() const { return kernel_; }
    int in_channels() const { return in_channels_; }
    int out_channels() const { return out_channels_; }
    bool has_slopes() const { return !value.slopes.empty(); }
    std::size_t parameter_count() const { return value.size(); }

    std::size_t weight_index(int dy, int dx, int c, int o) const
    {
        return ((static_cast<std::size_t>(dy) * kernel_ + dx) * in_channels_ + c) * out_channels_ + o;
    }

    // Throws ShapeMismatch unless the buffers were built for `spec`.
    void check_matches(const ConvSpec& spec) const;

    void zero_grad() { grad.zero(); }

    ParamSet<T> value;
    ParamSet<T> grad;
    ParamSet<T> velocity;

private:
    int kernel_ = 0;
    int in_channels_ = 0;
    int out_channels_ = 0;
};

// Converts values between precisions; gradients and velocities are reset.
template <typename To, typename From>
LayerParams<To> params_cast(const LayerParams<From>& p, const ConvSpec& spec);

/// Valid cross-correlation (no kernel flip):
///   out[y,x,o] = bias[o] + sum_{dy,dx,c} in[y*s-pad+dy, x*s-pad+dx, c] * w[dy,dx,c,o]
/// with out-of-range input taps reading zero.
template <typename T>
Tensor3<T> conv_forward(const Tensor3<T>& input, const LayerParams<T>& params, const ConvSpec& spec);

/// Adds dL/dweights and dL/dbiases for one sample into `grad`.
template <typename T>
void conv_accumulate_param_grads(const Tensor3<T>& input, const Tensor3<T>& grad_out, const ConvSpec& spec,
                                 ParamSet<T>& grad);

/// dL/dinput for an input of shape `input_shape`.
template <typename T>
Tensor3<T> conv_input_grad(const Tensor3<T>& grad_out, const LayerParams<T>& params, const ConvSpec& spec,
                           Shape3 input_shape);

/// Accumulates parameter gradients into params.grad (adding; the optimizer
/// step zeroes them) and returns dL/dinput.
template <typename T>
Tensor3<T> conv_backward(const Tensor3<T>& input, const Tensor3<T>& grad_out, LayerParams<T>& params,
                         const ConvSpec& spec);

} // namespace docsr
