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

namespace docsr {

// max(0, x) elementwise.
template <typename T>
Tensor3<T> relu_forward(const Tensor3<T>& x);

// Passes grad_out where x > 0; x <= 0 (including exactly 0) gets zero.
template <typename T>
Tensor3<T> relu_backward(const Tensor3<T>& x, const Tensor3<T>& grad_out);

/// Per-channel parametric ReLU: x if x > 0, slopes[c] * x otherwise.
template <typename T>
Tensor3<T> prelu_forward(const Tensor3<T>& x, std::span<const T> slopes);

/// Returns dL/dx and adds sum_{x <= 0} x * grad_out per channel into grad_slopes.
template <typename T>
Tensor3<T> prelu_backward(const Tensor3<T>& x, const Tensor3<T>& grad_out, std::span<const T> slopes,
                          std::span<T> grad_slopes);

} // namespace docsr
