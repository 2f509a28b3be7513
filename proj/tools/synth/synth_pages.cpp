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

#include "synth_pages.hpp"

#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <random>
#include <string>

namespace docsr::synth {

namespace {

constexpr int kSuper = 4;

std::string random_word(std::mt19937_64& rng)
{
    static const char* const onsets[] = {"b", "c", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t",
                                         "v", "w", "th", "st", "pr", "ch", "gr", "sh", "T", "K", "A", "M"};
    static const char* const vowels[] = {"a", "e", "i", "o", "u", "ai", "ou", "ee", "y"};
    static const char* const codas[] = {"", "", "n", "r", "s", "t", "l", "m", "nd", "ng", "ck"};
    std::uniform_int_distribution<int> syllables(1, 4);
    std::string w;
    for (int s = syllables(rng); s > 0; --s) {
        w += onsets[rng() % std::size(onsets)];
        w += vowels[rng() % std::size(vowels)];
        w += codas[rng() % std::size(codas)];
    }
    if (rng() % 7 == 0)
        w += ",";
    if (rng() % 11 == 0)
        w += std::to_string(rng() % 1000);
    return w;
}

} // namespace

GrayImage synth_page(const PageOptions& opts, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const int H = opts.height * kSuper, W = opts.width * kSuper;
    cv::Mat canvas(H, W, CV_8UC1, cv::Scalar(255));

    static const int fonts[] = {cv::FONT_HERSHEY_SIMPLEX, cv::FONT_HERSHEY_DUPLEX, cv::FONT_HERSHEY_COMPLEX,
                                cv::FONT_HERSHEY_TRIPLEX, cv::FONT_HERSHEY_COMPLEX_SMALL};
    const int font = fonts[rng() % std::size(fonts)] | (rng() % 5 == 0 ? cv::FONT_ITALIC : 0);

    // Hershey cap height is ~22 px at scale 1.
    std::uniform_real_distribution<double> jitter(0.85, 1.2);
    const double cap_px = opts.dpi / 11.0 * jitter(rng);
    const double scale = cap_px * kSuper / 22.0;
    const int thickness = std::max(1, static_cast<int>(scale * (1.4 + (rng() % 3) * 0.5)));
    int baseline = 0;
    const cv::Size probe = cv::getTextSize("Hg", font, scale, thickness, &baseline);
    const int line_step = static_cast<int>((probe.height + baseline) * 1.5);
    const int margin = static_cast<int>(opts.dpi * 0.25 * kSuper);
    const int ink = static_cast<int>(rng() % 40);

    for (int y = margin + probe.height; y < H - margin; y += line_step) {
        int x = margin;
        if (rng() % 9 == 0)
            x += line_step * 2; // paragraph indent
        while (true) {
            const std::string word = random_word(rng);
            const cv::Size sz = cv::getTextSize(word, font, scale, thickness, &baseline);
            if (x + sz.width > W - margin)
                break;
            cv::putText(canvas, word, {x, y}, font, scale, cv::Scalar(ink), thickness, cv::LINE_AA);
            x += sz.width + static_cast<int>(probe.height * 0.6);
        }
        if (rng() % 12 == 0)
            y += line_step; // blank line between paragraphs
    }

    cv::Mat page;
    cv::resize(canvas, page, cv::Size(opts.width, opts.height), 0, 0, cv::INTER_AREA);
    cv::Mat f;
    page.convertTo(f, CV_32F);
    if (opts.blur_sigma > 0)
        cv::GaussianBlur(f, f, cv::Size(0, 0), opts.blur_sigma);
    std::normal_distribution<float> noise(0.0f, static_cast<float>(opts.noise_sigma));

    GrayImage img(opts.height, opts.width);
    for (int y = 0; y < opts.height; ++y)
        for (int x = 0; x < opts.width; ++x) {
            const float v = f.at<float>(y, x) + (opts.noise_sigma > 0 ? noise(rng) : 0.0f);
            img.at(y, x) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
    return img;
}

} // namespace docsr::synth
