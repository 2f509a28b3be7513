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

#include "docsr/optimizer.hpp"

namespace docsr {

namespace {

template <typename T>
void update(std::vector<T>& p, std::vector<T>& g, std::vector<T>& v, T lr, T mu)
{
    for (std::size_t i = 0; i < p.size(); ++i) {
        v[i] = mu * v[i] - lr * g[i];
        p[i] += v[i];
        g[i] = T{};
    }
}

} // namespace

template <typename T>
void sgd_momentum_step(LayerParams<T>& params, T learning_rate, T momentum)
{
    update(params.value.weights, params.grad.weights, params.velocity.weights, learning_rate, momentum);
    update(params.value.biases, params.grad.biases, params.velocity.biases, learning_rate, momentum);
    update(params.value.slopes, params.grad.slopes, params.velocity.slopes, learning_rate, momentum);
}

template void sgd_momentum_step(LayerParams<float>&, float, float);
template void sgd_momentum_step(LayerParams<double>&, double, double);

} // namespace docsr
