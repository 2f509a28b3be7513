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

namespace docsr {

inline constexpr double kCatmullRomA = -0.5;

// Cubic convolution kernel with a = -0.5 (Catmull-Rom).
double cubic_weight(double t);

/// Separable bicubic resampling. Output pixel centers map to source
/// coordinates (dst + 0.5) * (in / out) - 0.5; taps beyond the border replicate
/// the edge. The result is clamped to [0, 255] and rounded half-up.
GrayImage bicubic_resize(const GrayImage& img, int out_h, int out_w);

/// Factor-2 degradation: bicubic down to (ceil(h/2), ceil(w/2)) and back to (h, w).
GrayImage degrade(const GrayImage& img);

} // namespace docsr
