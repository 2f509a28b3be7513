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

#include <span>
#include <vector>

namespace docsr {

template <typename T>
struct MseResult {
    double loss = 0.0;
    std::vector<Tensor3<T>> grad;
};

/// Batch loss (1/N) * sum_i ||pred_i - target_i||_F^2 and its gradient
/// 2/N * (pred_i - target_i). The sum is accumulated in double.
template <typename T>
MseResult<T> mse_loss(std::span<const Tensor3<T>> pred, std::span<const Tensor3<T>> target);

} // namespace docsr
