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

#include "docsr/conv.hpp"
#include "docsr/tensor.hpp"

#include <cstdint>
#include <vector>

namespace docsr {

template <typename T>
struct Layer {
    ConvSpec spec;
    LayerParams<T> params;
};

/// Intermediate values of one forward pass, kept for backprop.
/// inputs[i] is what layer i consumed, pre[i] its conv output before activation.
template <typename T>
struct ForwardTrace {
    std::vector<Tensor3<T>> inputs;
    std::vector<Tensor3<T>> pre;
};

/// A plain chain of conv(+activation) layers.
template <typename T>
class Network {
public:
    Network() = default;
    explicit Network(std::vector<Layer<T>> layers) : layers(std::move(layers)) {}

    Tensor3<T> forward(const Tensor3<T>& input) const;
    Tensor3<T> forward(const Tensor3<T>& input, ForwardTrace<T>& trace) const;

    /// Backpropagates grad_out through the trace, adding parameter gradients
    /// into grads (one ParamSet per layer). Returns dL/dinput when
    /// want_input_grad, otherwise an empty tensor.
    Tensor3<T> backward(const ForwardTrace<T>& trace, const Tensor3<T>& grad_out, std::vector<ParamSet<T>>& grads,
                        bool want_input_grad = false) const;

    // Zeroed gradient buffers shaped like the parameters.
    std::vector<ParamSet<T>> make_grad_buffers() const;
    void add_to_grads(const std::vector<ParamSet<T>>& grads);
    void zero_grad();
    std::size_t parameter_count() const;
    Shape3 output_shape(Shape3 input) const;

    std::vector<Layer<T>> layers;
};

// Sign pattern (pre-activation <= 0) of every rectified unit in the trace.
template <typename T>
std::vector<std::uint8_t> activation_pattern(const Network<T>& net, const ForwardTrace<T>& trace);

template <typename To, typename From>
Network<To> network_cast(const Network<From>& net)
{
    Network<To> out;
    out.layers.reserve(net.layers.size());
    for (const auto& l : net.layers)
        out.layers.push_back({l.spec, params_cast<To>(l.params, l.spec)});
    return out;
}

extern template class Network<float>;
extern template class Network<double>;

} // namespace docsr
