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

#include "docsr/error.hpp"
#include "docsr/evaluate.hpp"

#include <cmath>

namespace docsr {

double psnr(const GrayImage& reference, const GrayImage& test)
{
    if (reference.height != test.height || reference.width != test.width)
        throw ShapeMismatch("psnr: images differ in size");
    if (reference.pixels.empty())
        throw ShapeMismatch("psnr: empty image");
    double sq = 0.0;
    for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
        const double e = static_cast<double>(reference.pixels[i]) - static_cast<double>(test.pixels[i]);
        sq += e * e;
    }
    if (sq == 0.0)
        return std::numeric_limits<double>::infinity();
    const double rmse = std::sqrt(sq / static_cast<double>(reference.pixels.size()));
    return 20.0 * std::log10(255.0 / rmse);
}

} // namespace docsr
