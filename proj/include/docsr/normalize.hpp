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

#include "docsr/image.hpp"
#include "docsr/tensor.hpp"

#include <span>

namespace docsr {

/// Global intensity statistics of a training corpus. Pixels map to network
/// units as v * scale - mean.
struct NormStats {
    double mean = 0.0;           // corpus mean in [0, 1] units
    double scale = 1.0 / 255.0;

    bool operator==(const NormStats&) const = default;
};

// Mean of every pixel of every image, divided by 255. Throws EmptyCorpus.
NormStats compute_norm_stats(std::span<const GrayImage> corpus);

// Pixel value v -> v * scale - mean.
float normalize_value(std::uint8_t v, const NormStats& stats);
// Network value -> clamp(round_half_up((v + mean) / scale), 0, 255).
std::uint8_t denormalize_value(double v, const NormStats& stats);

Tensor3<float> normalize(const GrayImage& img, const NormStats& stats);
GrayImage denormalize(const Tensor3<float>& t, const NormStats& stats);

} // namespace docsr
