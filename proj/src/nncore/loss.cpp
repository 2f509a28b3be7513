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

#include "docsr/loss.hpp"

#include "docsr/error.hpp"

namespace docsr {

template <typename T>
MseResult<T> mse_loss(std::span<const Tensor3<T>> pred, std::span<const Tensor3<T>> target)
{
    if (pred.size() != target.size())
        throw ShapeMismatch("mse: batch sizes differ");
    if (pred.empty())
        throw ShapeMismatch("mse: empty batch");
    const double n = static_cast<double>(pred.size());
    const T scale = static_cast<T>(2.0 / n);
    MseResult<T> r;
    r.grad.reserve(pred.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i].shape() != target[i].shape())
            throw ShapeMismatch("mse: prediction and target shapes differ");
        Tensor3<T> g(pred[i].shape());
        auto p = pred[i].values();
        auto t = target[i].values();
        auto gv = g.values();
        for (std::size_t j = 0; j < p.size(); ++j) {
            const T d = p[j] - t[j];
            sum += static_cast<double>(d) * static_cast<double>(d);
            gv[j] = scale * d;
        }
        r.grad.push_back(std::move(g));
    }
    r.loss = sum / n;
    return r;
}

template MseResult<float> mse_loss(std::span<const Tensor3<float>>, std::span<const Tensor3<float>>);
template MseResult<double> mse_loss(std::span<const Tensor3<double>>, std::span<const Tensor3<double>>);

} // namespace docsr
