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

#include <cstdint>

namespace docsr {

inline constexpr double kInitialPreluSlope = 0.25;

/// He initialization: weights ~ N(0, 2 / fan_in) with fan_in = kernel^2 * in_channels,
/// zero biases, PReLU slopes at 0.25. Deterministic in `seed`.
template <typename T>
LayerParams<T> he_init(const ConvSpec& spec, std::uint64_t seed);

} // namespace docsr
