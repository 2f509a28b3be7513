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

// Naive serial kernels written straight from the definitions. They exist as
// test oracles and as the baseline in the kernel benchmark; nothing in the
// library calls them.

#include "docsr/conv.hpp"
#include "docsr/tensor.hpp"

namespace docsr::reference {

template <typename T>
Tensor3<T> conv_forward(const Tensor3<T>& in, const LayerParams<T>& p, const ConvSpec& spec)
{
    const int k = spec.kernel, s = spec.stride, pad = spec.zero_pad;
    const int oh = (in.height() - k + 2 * pad) / s + 1;
    const int ow = (in.width() - k + 2 * pad) / s + 1;
    Tensor3<T> out(oh, ow, spec.out_channels);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x)
            for (int o = 0; o < spec.out_channels; ++o) {
                T acc = p.value.biases[o];
                for (int dy = 0; dy < k; ++dy)
                    for (int dx = 0; dx < k; ++dx)
                        for (int c = 0; c < spec.in_channels; ++c) {
                            const int iy = y * s - pad + dy, ix = x * s - pad + dx;
                            if (iy < 0 || ix < 0 || iy >= in.height() || ix >= in.width())
                                continue;
                            acc += in(iy, ix, c) * p.value.weights[p.weight_index(dy, dx, c, o)];
                        }
                out(y, x, o) = acc;
            }
    return out;
}

// Scatter-form backward: each output tap pushes its contribution to the input
// and weight gradients.
template <typename T>
Tensor3<T> conv_backward(const Tensor3<T>& in, const Tensor3<T>& grad_out, const LayerParams<T>& p,
                         const ConvSpec& spec, ParamSet<T>& grad)
{
    const int k = spec.kernel, s = spec.stride, pad = spec.zero_pad;
    Tensor3<T> grad_in(in.shape());
    for (int y = 0; y < grad_out.height(); ++y)
        for (int x = 0; x < grad_out.width(); ++x)
            for (int o = 0; o < spec.out_channels; ++o) {
                const T g = grad_out(y, x, o);
                grad.biases[o] += g;
                for (int dy = 0; dy < k; ++dy)
                    for (int dx = 0; dx < k; ++dx)
                        for (int c = 0; c < spec.in_channels; ++c) {
                            const int iy = y * s - pad + dy, ix = x * s - pad + dx;
                            if (iy < 0 || ix < 0 || iy >= in.height() || ix >= in.width())
                                continue;
                            const std::size_t wi = p.weight_index(dy, dx, c, o);
                            grad.weights[wi] += in(iy, ix, c) * g;
                            grad_in(iy, ix, c) += p.value.weights[wi] * g;
                        }
            }
    return grad_in;
}

} // namespace docsr::reference
