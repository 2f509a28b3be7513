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

#include <cstdint>

namespace docsr::synth {

/// Options for a synthetic scanned text page: text rendered at 4x, area
/// downsampled (scanner integration), lightly blurred, plus sensor noise.
struct PageOptions {
    int height = 360;
    int width = 480;
    int dpi = 150;             // sets glyph size: cap height ~ dpi / 11 pixels
    double noise_sigma = 2.0;  // gray levels
    double blur_sigma = 0.45;  // pixels, after downsampling
};

GrayImage synth_page(const PageOptions& opts, std::uint64_t seed);

} // namespace docsr::synth
