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

#include "docsr/patches.hpp"

#include "docsr/bicubic.hpp"
#include "docsr/error.hpp"

#include <cmath>
#include <random>

namespace docsr {

double window_stddev(const GrayImage& img, int y, int x, int h, int w)
{
    double sum = 0.0, sq = 0.0;
    for (int r = y; r < y + h; ++r)
        for (int c = x; c < x + w; ++c) {
            const double v = img.at(r, c);
            sum += v;
            sq += v * v;
        }
    const double n = static_cast<double>(h) * w;
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, sq / n - mean * mean));
}

namespace {

Tensor3<float> window(const GrayImage& img, int y, int x, int size, const NormStats& stats)
{
    Tensor3<float> t(size, size, 1);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            t(r, c, 0) = normalize_value(img.at(y + r, x + c), stats);
    return t;
}

} // namespace

std::vector<PatchPair> sample_patch_pairs(const GrayImage& hr_img, std::size_t count, std::uint64_t seed,
                                          const NormStats& stats, const SamplingOptions& opts, int image_id)
{
    if (hr_img.height < kLrPatch || hr_img.width < kLrPatch)
        throw ImageTooSmall("patch sampling needs a page of at least 16x16, got " + std::to_string(hr_img.height) +
                            "x" + std::to_string(hr_img.width));
    std::vector<PatchPair> out;
    if (count == 0)
        return out;
    out.reserve(count);

    const GrayImage degraded = degrade(hr_img);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rows(kPatchMargin, hr_img.height - kLrPatch + kPatchMargin);
    std::uniform_int_distribution<int> cols(kPatchMargin, hr_img.width - kLrPatch + kPatchMargin);
    const int attempts = opts.reject_blank ? std::max(1, opts.max_attempts) : 1;

    for (std::size_t i = 0; i < count; ++i) {
        int r = 0, c = 0;
        for (int a = 0; a < attempts; ++a) {
            r = rows(rng);
            c = cols(rng);
            if (!opts.reject_blank || window_stddev(hr_img, r, c, kHrPatch, kHrPatch) >= opts.min_hr_stddev)
                break;
        }
        out.push_back({window(degraded, r - kPatchMargin, c - kPatchMargin, kLrPatch, stats),
                       window(hr_img, r, c, kHrPatch, stats), {image_id, r, c}});
    }
    return out;
}

std::vector<PatchPair> sample_corpus_pairs(std::span<const GrayImage> corpus, std::size_t total, std::uint64_t seed,
                                           const NormStats& stats, const SamplingOptions& opts)
{
    if (corpus.empty())
        throw EmptyCorpus("no images to sample from");
    for (const auto& img : corpus)
        if (img.height < kLrPatch || img.width < kLrPatch)
            throw ImageTooSmall("patch sampling needs pages of at least 16x16");
    const std::size_t n = corpus.size();
    std::vector<std::vector<PatchPair>> per_image(n);
    const int ni = static_cast<int>(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ni; ++i) {
        const std::size_t share = total / n + (static_cast<std::size_t>(i) < total % n ? 1 : 0);
        per_image[i] = sample_patch_pairs(corpus[i], share, seed ^ static_cast<std::uint64_t>(i), stats, opts, i);
    }
    std::vector<PatchPair> out;
    out.reserve(total);
    for (auto& v : per_image)
        for (auto& p : v)
            out.push_back(std::move(p));
    return out;
}

} // namespace docsr
