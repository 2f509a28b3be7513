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

namespace docsr {

inline constexpr double kDefaultMomentum = 0.9;

/// Heavy-ball momentum update for every buffer of the layer:
///   v <- momentum * v - lr * grad;  p <- p + v
/// then zeroes the gradients for the next mini-batch.
template <typename T>
void sgd_momentum_step(LayerParams<T>& params, T learning_rate, T momentum);

} // namespace docsr
