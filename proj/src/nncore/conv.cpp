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

#include "docsr/conv.hpp"

#include "docsr/error.hpp"
#include "gemm.hpp"

#include <algorithm>
#include <string>

namespace docsr {

const char* to_string(Activation a)
{
    switch (a) {
    case Activation::None:
        return "none";
    case Activation::ReLU:
        return "relu";
    case Activation::PReLU:
        return "prelu";
    }
    return "?";
}

Shape3 conv_output_shape(int in_h, int in_w, const ConvSpec& spec)
{
    if (spec.kernel < 1 || spec.stride < 1 || spec.zero_pad < 0 || spec.out_channels < 1)
        throw NonPositiveOutput("invalid conv spec (kernel/stride must be >= 1, pad >= 0)");
    auto axis = [&](int in) {
        const int span = in - spec.kernel + 2 * spec.zero_pad;
        if (span < 0)
            throw NonPositiveOutput("kernel " + std::to_string(spec.kernel) + " does not fit input extent " +
                                    std::to_string(in));
        if (span % spec.stride != 0)
            throw IndivisibleStride("(" + std::to_string(in) + " - " + std::to_string(spec.kernel) + " + 2*" +
                                    std::to_string(spec.zero_pad) + ") not divisible by stride " +
                                    std::to_string(spec.stride));
        return span / spec.stride + 1;
    };
    return {axis(in_h), axis(in_w), spec.out_channels};
}

template <typename T>
void ParamSet<T>::zero()
{
    std::fill(weights.begin(), weights.end(), T{});
    std::fill(biases.begin(), biases.end(), T{});
    std::fill(slopes.begin(), slopes.end(), T{});
}

template <typename T>
void ParamSet<T>::add(const ParamSet& other)
{
    if (!same_shape(other))
        throw ShapeMismatch("parameter set shapes differ");
    for (std::size_t i = 0; i < weights.size(); ++i)
        weights[i] += other.weights[i];
    for (std::size_t i = 0; i < biases.size(); ++i)
        biases[i] += other.biases[i];
    for (std::size_t i = 0; i < slopes.size(); ++i)
        slopes[i] += other.slopes[i];
}

template <typename T>
bool ParamSet<T>::same_shape(const ParamSet& other) const
{
    return weights.size() == other.weights.size() && biases.size() == other.biases.size() &&
           slopes.size() == other.slopes.size();
}

template <typename T>
LayerParams<T>::LayerParams(const ConvSpec& spec)
    : kernel_(spec.kernel), in_channels_(spec.in_channels), out_channels_(spec.out_channels)
{
    if (spec.kernel < 1 || spec.in_channels < 1 || spec.out_channels < 1)
        throw ShapeMismatch("layer dims must be >= 1");
    const std::size_t nw = static_cast<std::size_t>(kernel_) * kernel_ * in_channels_ * out_channels_;
    const std::size_t ns = spec.activation == Activation::PReLU ? out_channels_ : 0;
    for (ParamSet<T>* set : {&value, &grad, &velocity}) {
        set->weights.assign(nw, T{});
        set->biases.assign(out_channels_, T{});
        set->slopes.assign(ns, T{});
    }
}

template <typename T>
void LayerParams<T>::check_matches(const ConvSpec& spec) const
{
    const bool wants_slopes = spec.activation == Activation::PReLU;
    if (spec.kernel != kernel_ || spec.in_channels != in_channels_ || spec.out_channels != out_channels_ ||
        wants_slopes != has_slopes())
        throw ShapeMismatch("layer parameters do not match conv spec (" + std::to_string(spec.kernel) + "x" +
                            std::to_string(spec.kernel) + ", " + std::to_string(spec.in_channels) + "->" +
                            std::to_string(spec.out_channels) + ")");
}

template <typename To, typename From>
LayerParams<To> params_cast(const LayerParams<From>& p, const ConvSpec& spec)
{
    p.check_matches(spec);
    LayerParams<To> out(spec);
    std::copy(p.value.weights.begin(), p.value.weights.end(), out.value.weights.begin());
    std::copy(p.value.biases.begin(), p.value.biases.end(), out.value.biases.begin());
    std::copy(p.value.slopes.begin(), p.value.slopes.end(), out.value.slopes.begin());
    return out;
}

namespace {

// Patch matrix of a conv input: row p = output pixel, columns (dy, dx, c) in
// weight-row order, zero where a tap falls in the padding.
template <typename T>
struct Im2col {
    int pixels = 0;
    int taps = 0;
    const T* data = nullptr; // pixels x taps
    std::vector<T> storage;
};

template <typename T>
bool is_pointwise(const ConvSpec& spec)
{
    return spec.kernel == 1 && spec.stride == 1 && spec.zero_pad == 0;
}

template <typename T>
Im2col<T> im2col(const Tensor3<T>& input, const ConvSpec& spec, Shape3 os)
{
    Im2col<T> m;
    m.pixels = os.height * os.width;
    m.taps = spec.kernel * spec.kernel * spec.in_channels;
    if (is_pointwise<T>(spec)) {
        m.data = input.data();
        return m;
    }
    const int k = spec.kernel, s = spec.stride, pad = spec.zero_pad, in_c = spec.in_channels;
    m.storage.assign(static_cast<std::size_t>(m.pixels) * m.taps, T{});
    for (int y = 0; y < os.height; ++y)
        for (int x = 0; x < os.width; ++x) {
            T* row = m.storage.data() + static_cast<std::size_t>(y * os.width + x) * m.taps;
            const int x0 = x * s - pad;
            const bool full_row = x0 >= 0 && x0 + k <= input.width();
            for (int dy = 0; dy < k; ++dy) {
                const int iy = y * s - pad + dy;
                if (iy < 0 || iy >= input.height())
                    continue;
                T* dst = row + dy * k * in_c;
                if (full_row) {
                    // The k taps of a kernel row are contiguous in HWC order.
                    const T* src = input.pixel(iy, x0);
                    for (int i = 0; i < k * in_c; ++i)
                        dst[i] = src[i];
                    continue;
                }
                for (int dx = 0; dx < k; ++dx) {
                    const int ix = x0 + dx;
                    if (ix < 0 || ix >= input.width())
                        continue;
                    const T* src = input.pixel(iy, ix);
                    for (int c = 0; c < in_c; ++c)
                        dst[dx * in_c + c] = src[c];
                }
            }
        }
    m.data = m.storage.data();
    return m;
}

template <typename T>
void check_input(const Tensor3<T>& input, const ConvSpec& spec)
{
    if (input.channels() != spec.in_channels)
        throw ShapeMismatch("conv input has " + std::to_string(input.channels()) + " channels, layer expects " +
                            std::to_string(spec.in_channels));
}

} // namespace

template <typename T>
Tensor3<T> conv_forward(const Tensor3<T>& input, const LayerParams<T>& params, const ConvSpec& spec)
{
    params.check_matches(spec);
    check_input(input, spec);
    const Shape3 os = conv_output_shape(input.height(), input.width(), spec);
    Tensor3<T> out(os);
    const int out_c = spec.out_channels;
    const T* b = params.value.biases.data();
    for (int p = 0; p < os.height * os.width; ++p)
        std::copy(b, b + out_c, out.data() + static_cast<std::size_t>(p) * out_c);

    const Im2col<T> cols = im2col(input, spec, os);
    detail::gemm<T>(cols.pixels, out_c, cols.taps, cols.data, cols.taps, params.value.weights.data(), out_c,
                    out.data(), out_c);
    return out;
}

template <typename T>
void conv_accumulate_param_grads(const Tensor3<T>& input, const Tensor3<T>& grad_out, const ConvSpec& spec,
                                 ParamSet<T>& grad)
{
    check_input(input, spec);
    const Shape3 os = conv_output_shape(input.height(), input.width(), spec);
    if (grad_out.shape() != os)
        throw ShapeMismatch("conv grad_out shape does not match forward output");
    const int out_c = spec.out_channels;
    const int taps = spec.kernel * spec.kernel * spec.in_channels;
    if (grad.weights.size() != static_cast<std::size_t>(taps) * out_c ||
        grad.biases.size() != static_cast<std::size_t>(out_c))
        throw ShapeMismatch("gradient buffers do not match conv spec");

    const int pixels = os.height * os.width;
    T* gb = grad.biases.data();
    for (int p = 0; p < pixels; ++p) {
        const T* g = grad_out.data() + static_cast<std::size_t>(p) * out_c;
        for (int o = 0; o < out_c; ++o)
            gb[o] += g[o];
    }

    // dW[taps x out] += cols^T[taps x pixels] * grad_out[pixels x out]
    const Im2col<T> cols = im2col(input, spec, os);
    std::vector<T> cols_t(static_cast<std::size_t>(taps) * pixels);
    detail::transpose(pixels, taps, cols.data, cols_t.data());
    detail::gemm<T>(taps, out_c, pixels, cols_t.data(), pixels, grad_out.data(), out_c, grad.weights.data(), out_c);
}

template <typename T>
Tensor3<T> conv_input_grad(const Tensor3<T>& grad_out, const LayerParams<T>& params, const ConvSpec& spec,
                           Shape3 input_shape)
{
    params.check_matches(spec);
    const Shape3 os = conv_output_shape(input_shape.height, input_shape.width, spec);
    if (grad_out.shape() != os || input_shape.channels != spec.in_channels)
        throw ShapeMismatch("conv grad_out shape does not match forward output");
    Tensor3<T> grad_in(input_shape);

    const int k = spec.kernel, s = spec.stride, pad = spec.zero_pad;
    const int in_c = spec.in_channels, out_c = spec.out_channels;
    const int taps = k * k * in_c;
    const int pixels = os.height * os.width;

    // dcols[pixels x taps] = grad_out[pixels x out] * W^T[out x taps]
    std::vector<T> w_t(static_cast<std::size_t>(taps) * out_c);
    detail::transpose(taps, out_c, params.value.weights.data(), w_t.data());
    if (is_pointwise<T>(spec)) {
        detail::gemm<T>(pixels, taps, out_c, grad_out.data(), out_c, w_t.data(), taps, grad_in.data(), taps);
        return grad_in;
    }
    std::vector<T> dcols(static_cast<std::size_t>(pixels) * taps, T{});
    detail::gemm<T>(pixels, taps, out_c, grad_out.data(), out_c, w_t.data(), taps, dcols.data(), taps);

    // col2im: scatter-add each tap back onto the input pixel it read.
    for (int y = 0; y < os.height; ++y)
        for (int x = 0; x < os.width; ++x) {
            const T* row = dcols.data() + static_cast<std::size_t>(y * os.width + x) * taps;
            for (int dy = 0; dy < k; ++dy) {
                const int iy = y * s - pad + dy;
                if (iy < 0 || iy >= input_shape.height)
                    continue;
                for (int dx = 0; dx < k; ++dx) {
                    const int ix = x * s - pad + dx;
                    if (ix < 0 || ix >= input_shape.width)
                        continue;
                    T* gin = grad_in.pixel(iy, ix);
                    const T* src = row + (dy * k + dx) * in_c;
                    for (int c = 0; c < in_c; ++c)
                        gin[c] += src[c];
                }
            }
        }
    return grad_in;
}

template <typename T>
Tensor3<T> conv_backward(const Tensor3<T>& input, const Tensor3<T>& grad_out, LayerParams<T>& params,
                         const ConvSpec& spec)
{
    params.check_matches(spec);
    conv_accumulate_param_grads(input, grad_out, spec, params.grad);
    return conv_input_grad(grad_out, params, spec, input.shape());
}

#define DOCSR_INSTANTIATE(T)                                                                                   \
    template struct ParamSet<T>;                                                                               \
    template class LayerParams<T>;                                                                             \
    template Tensor3<T> conv_forward(const Tensor3<T>&, const LayerParams<T>&, const ConvSpec&);              \
    template void conv_accumulate_param_grads(const Tensor3<T>&, const Tensor3<T>&, const ConvSpec&,          \
                                              ParamSet<T>&);                                                   \
    template Tensor3<T> conv_input_grad(const Tensor3<T>&, const LayerParams<T>&, const ConvSpec&, Shape3);   \
    template Tensor3<T> conv_backward(const Tensor3<T>&, const Tensor3<T>&, LayerParams<T>&, const ConvSpec&);

DOCSR_INSTANTIATE(float)
DOCSR_INSTANTIATE(double)
#undef DOCSR_INSTANTIATE

template LayerParams<double> params_cast(const LayerParams<float>&, const ConvSpec&);
template LayerParams<float> params_cast(const LayerParams<double>&, const ConvSpec&);
template LayerParams<float> params_cast(const LayerParams<float>&, const ConvSpec&);
template LayerParams<double> params_cast(const LayerParams<double>&, const ConvSpec&);

} // namespace docsr
