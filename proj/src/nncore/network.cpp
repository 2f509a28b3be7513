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

#include "docsr/network.hpp"

#include "docsr/activation.hpp"
#include "docsr/error.hpp"

namespace docsr {

namespace {

template <typename T>
Tensor3<T> activate(const Layer<T>& layer, const Tensor3<T>& z)
{
    switch (layer.spec.activation) {
    case Activation::ReLU:
        return relu_forward(z);
    case Activation::PReLU:
        return prelu_forward<T>(z, layer.params.value.slopes);
    case Activation::None:
        break;
    }
    return z;
}

} // namespace

template <typename T>
Tensor3<T> Network<T>::forward(const Tensor3<T>& input) const
{
    Tensor3<T> x = input;
    for (const auto& layer : layers)
        x = activate(layer, conv_forward(x, layer.params, layer.spec));
    return x;
}

template <typename T>
Tensor3<T> Network<T>::forward(const Tensor3<T>& input, ForwardTrace<T>& trace) const
{
    trace.inputs.resize(layers.size());
    trace.pre.resize(layers.size());
    Tensor3<T> x = input;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        trace.inputs[i] = std::move(x);
        trace.pre[i] = conv_forward(trace.inputs[i], layers[i].params, layers[i].spec);
        x = activate(layers[i], trace.pre[i]);
    }
    return x;
}

template <typename T>
Tensor3<T> Network<T>::backward(const ForwardTrace<T>& trace, const Tensor3<T>& grad_out,
                                std::vector<ParamSet<T>>& grads, bool want_input_grad) const
{
    if (trace.pre.size() != layers.size() || grads.size() != layers.size())
        throw ShapeMismatch("backward: trace/gradient buffers do not match network depth");
    Tensor3<T> g = grad_out;
    for (std::size_t i = layers.size(); i-- > 0;) {
        const auto& layer = layers[i];
        switch (layer.spec.activation) {
        case Activation::ReLU:
            g = relu_backward(trace.pre[i], g);
            break;
        case Activation::PReLU:
            g = prelu_backward<T>(trace.pre[i], g, layer.params.value.slopes, grads[i].slopes);
            break;
        case Activation::None:
            if (g.shape() != trace.pre[i].shape())
                throw ShapeMismatch("backward: gradient shape does not match layer output");
            break;
        }
        conv_accumulate_param_grads(trace.inputs[i], g, layer.spec, grads[i]);
        if (i > 0 || want_input_grad)
            g = conv_input_grad(g, layer.params, layer.spec, trace.inputs[i].shape());
        else
            g = Tensor3<T>{};
    }
    return g;
}

template <typename T>
std::vector<ParamSet<T>> Network<T>::make_grad_buffers() const
{
    std::vector<ParamSet<T>> out;
    out.reserve(layers.size());
    for (const auto& l : layers) {
        ParamSet<T> g = l.params.grad;
        g.zero();
        out.push_back(std::move(g));
    }
    return out;
}

template <typename T>
void Network<T>::add_to_grads(const std::vector<ParamSet<T>>& grads)
{
    if (grads.size() != layers.size())
        throw ShapeMismatch("gradient buffer count does not match network depth");
    for (std::size_t i = 0; i < layers.size(); ++i)
        layers[i].params.grad.add(grads[i]);
}

template <typename T>
void Network<T>::zero_grad()
{
    for (auto& l : layers)
        l.params.zero_grad();
}

template <typename T>
std::size_t Network<T>::parameter_count() const
{
    std::size_t n = 0;
    for (const auto& l : layers)
        n += l.params.parameter_count();
    return n;
}

template <typename T>
Shape3 Network<T>::output_shape(Shape3 input) const
{
    for (const auto& l : layers) {
        if (input.channels != l.spec.in_channels)
            throw ShapeMismatch("layer chain channel mismatch");
        input = conv_output_shape(input.height, input.width, l.spec);
    }
    return input;
}

template <typename T>
std::vector<std::uint8_t> activation_pattern(const Network<T>& net, const ForwardTrace<T>& trace)
{
    std::vector<std::uint8_t> bits;
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        if (net.layers[i].spec.activation == Activation::None)
            continue;
        for (T v : trace.pre[i].values())
            bits.push_back(v > T{} ? 1 : 0);
    }
    return bits;
}

template class Network<float>;
template class Network<double>;
template std::vector<std::uint8_t> activation_pattern(const Network<float>&, const ForwardTrace<float>&);
template std::vector<std::uint8_t> activation_pattern(const Network<double>&, const ForwardTrace<double>&);

} // namespace docsr
