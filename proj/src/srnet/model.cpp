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

#include "docsr/srnet.hpp"

#include "docsr/error.hpp"
#include "docsr/init.hpp"
#include "docsr/patches.hpp"
#include "docsr/random.hpp"

namespace docsr {

std::array<ConvSpec, kSrLayers> sr_layer_specs(Activation activation)
{
    return {{
        {1, 64, 5, 1, 0, activation},
        {64, 44, 1, 1, 0, activation},
        {44, 24, 1, 1, 0, activation},
        {24, 14, 1, 1, 0, activation},
        {14, 1, 3, 1, 0, Activation::None},
    }};
}

SrModel build_model(Activation activation, std::uint64_t seed)
{
    if (activation == Activation::None)
        throw std::invalid_argument("model activation must be ReLU or PReLU");
    SrModel m;
    m.activation = activation;
    const auto specs = sr_layer_specs(activation);
    for (int i = 0; i < kSrLayers; ++i)
        m.net.layers.push_back({specs[i], he_init<float>(specs[i], mix_seed(seed, static_cast<std::uint64_t>(i)))});
    return m;
}

void validate_architecture(const SrModel& model)
{
    if (model.activation == Activation::None)
        throw FormatError("model activation must be ReLU or PReLU");
    const auto specs = sr_layer_specs(model.activation);
    if (model.net.layers.size() != specs.size())
        throw FormatError("model must have exactly 5 layers");
    for (int i = 0; i < kSrLayers; ++i) {
        const auto& l = model.net.layers[i];
        if (!(l.spec == specs[i]))
            throw FormatError("layer " + std::to_string(i + 1) + " does not match the 5-layer architecture");
        try {
            l.params.check_matches(l.spec);
        } catch (const ShapeMismatch& e) {
            throw FormatError(e.what());
        }
    }
}

Tensor3<float> forward_patch(const SrModel& model, const Tensor3<float>& lr_patch)
{
    if (lr_patch.shape() != Shape3{kLrPatch, kLrPatch, 1})
        throw ShapeMismatch("forward_patch expects a 16x16x1 patch");
    return model.net.forward(lr_patch);
}

} // namespace docsr
