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

#include "docsr/init.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace docsr {

template <typename T>
LayerParams<T> he_init(const ConvSpec& spec, std::uint64_t seed)
{
    LayerParams<T> p(spec);
    const double fan_in = static_cast<double>(spec.kernel) * spec.kernel * spec.in_channels;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
    for (T& w : p.value.weights)
        w = static_cast<T>(dist(rng));
    std::fill(p.value.slopes.begin(), p.value.slopes.end(), static_cast<T>(kInitialPreluSlope));
    return p;
}

template LayerParams<float> he_init(const ConvSpec&, std::uint64_t);
template LayerParams<double> he_init(const ConvSpec&, std::uint64_t);

} // namespace docsr
