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

#include "docsr/normalize.hpp"

#include "docsr/error.hpp"

#include <algorithm>
#include <cmath>

namespace docsr {

NormStats compute_norm_stats(std::span<const GrayImage> corpus)
{
    if (corpus.empty())
        throw EmptyCorpus("cannot compute normalization statistics of an empty corpus");
    std::uint64_t sum = 0, count = 0;
    for (const auto& img : corpus) {
        for (std::uint8_t v : img.pixels)
            sum += v;
        count += img.pixels.size();
    }
    if (count == 0)
        throw EmptyCorpus("corpus images contain no pixels");
    NormStats s;
    s.mean = static_cast<double>(sum) / static_cast<double>(count) / 255.0;
    return s;
}

float normalize_value(std::uint8_t v, const NormStats& stats)
{
    return static_cast<float>(v * stats.scale - stats.mean);
}

std::uint8_t denormalize_value(double v, const NormStats& stats)
{
    const double px = std::floor((v + stats.mean) / stats.scale + 0.5);
    if (!(px > 0.0))
        return 0;
    return static_cast<std::uint8_t>(std::min(px, 255.0));
}

Tensor3<float> normalize(const GrayImage& img, const NormStats& stats)
{
    Tensor3<float> t(img.height, img.width, 1);
    auto v = t.values();
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        v[i] = normalize_value(img.pixels[i], stats);
    return t;
}

GrayImage denormalize(const Tensor3<float>& t, const NormStats& stats)
{
    if (t.channels() != 1)
        throw ShapeMismatch("denormalize expects a single-channel tensor");
    GrayImage img(t.height(), t.width());
    auto v = t.values();
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = denormalize_value(v[i], stats);
    return img;
}

} // namespace docsr
