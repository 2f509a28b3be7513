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
#include "docsr/normalize.hpp"
#include "docsr/tensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace docsr {

inline constexpr int kLrPatch = 16;
inline constexpr int kHrPatch = 10;
// Per-side shrinkage of the five valid convolutions: (16 - 10) / 2.
inline constexpr int kPatchMargin = (kLrPatch - kHrPatch) / 2;

struct PatchSource {
    int image_id = 0;
    int row = 0; // HR anchor
    int col = 0;
    bool operator==(const PatchSource&) const = default;
};

/// Aligned training example: the LR window starts kPatchMargin pixels above
/// and left of the HR window, in the same (full-resolution) frame.
struct PatchPair {
    Tensor3<float> lr; // 16x16x1, normalized, cut from the degraded image
    Tensor3<float> hr; // 10x10x1, normalized, cut from the original image
    PatchSource source;
};

struct SamplingOptions {
    bool reject_blank = true;
    double min_hr_stddev = 2.0; // gray levels
    int max_attempts = 50;
};

/// Draws `count` uniformly placed pairs from one page. The page is degraded
/// once; anchors (r, c) range over [3, dim - 13] so both windows fit.
/// Throws ImageTooSmall for pages under 16x16.
std::vector<PatchPair> sample_patch_pairs(const GrayImage& hr_img, std::size_t count, std::uint64_t seed,
                                          const NormStats& stats, const SamplingOptions& opts = {},
                                          int image_id = 0);

/// Samples `total` pairs across a corpus, splitting the count evenly (earlier
/// pages take the remainder). Page i uses seed ^ i, so the result does not
/// depend on how pages are spread over threads.
std::vector<PatchPair> sample_corpus_pairs(std::span<const GrayImage> corpus, std::size_t total, std::uint64_t seed,
                                           const NormStats& stats, const SamplingOptions& opts = {});

// Standard deviation of the pixel values of a window, in gray levels.
double window_stddev(const GrayImage& img, int y, int x, int h, int w);

} // namespace docsr
