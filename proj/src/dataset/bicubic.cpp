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

#include "docsr/bicubic.hpp"

#include "docsr/error.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace docsr {

double cubic_weight(double t)
{
    constexpr double a = kCatmullRomA;
    t = std::abs(t);
    if (t <= 1.0)
        return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
    if (t < 2.0)
        return ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a;
    return 0.0;
}

namespace {

struct Taps {
    std::array<int, 4> index;
    std::array<double, 4> weight;
};

std::vector<Taps> make_taps(int in, int out)
{
    std::vector<Taps> taps(out);
    const double scale = static_cast<double>(in) / out;
    for (int d = 0; d < out; ++d) {
        const double src = (d + 0.5) * scale - 0.5;
        const double base = std::floor(src);
        const double t = src - base;
        const int i0 = static_cast<int>(base);
        for (int k = 0; k < 4; ++k) {
            taps[d].index[k] = std::clamp(i0 - 1 + k, 0, in - 1);
            taps[d].weight[k] = cubic_weight(t - (k - 1));
        }
    }
    return taps;
}

} // namespace

GrayImage bicubic_resize(const GrayImage& img, int out_h, int out_w)
{
    if (out_h < 1 || out_w < 1)
        throw ImageTooSmall("bicubic_resize: output dims must be >= 1");
    if (img.height < 1 || img.width < 1)
        throw ImageTooSmall("bicubic_resize: empty source image");
    const auto xt = make_taps(img.width, out_w);
    const auto yt = make_taps(img.height, out_h);

    std::vector<double> rows(static_cast<std::size_t>(img.height) * out_w);
    for (int y = 0; y < img.height; ++y) {
        const std::uint8_t* src = &img.pixels[static_cast<std::size_t>(y) * img.width];
        double* dst = &rows[static_cast<std::size_t>(y) * out_w];
        for (int x = 0; x < out_w; ++x) {
            const Taps& t = xt[x];
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += t.weight[k] * src[t.index[k]];
            dst[x] = acc;
        }
    }

    GrayImage out(out_h, out_w);
    for (int y = 0; y < out_h; ++y) {
        const Taps& t = yt[y];
        for (int x = 0; x < out_w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += t.weight[k] * rows[static_cast<std::size_t>(t.index[k]) * out_w + x];
            out.at(y, x) = static_cast<std::uint8_t>(std::clamp(std::floor(acc + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

GrayImage degrade(const GrayImage& img)
{
    if (img.height < 2 || img.width < 2)
        throw ImageTooSmall("degrade: image must be at least 2x2");
    const GrayImage low = bicubic_resize(img, (img.height + 1) / 2, (img.width + 1) / 2);
    return bicubic_resize(low, img.height, img.width);
}

} // namespace docsr
