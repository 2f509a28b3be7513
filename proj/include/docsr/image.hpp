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

#include <cstdint>
#include <filesystem>
#include <vector>

namespace docsr {

/// 8-bit single-channel image, row-major.
struct GrayImage {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int h, int w, std::uint8_t fill = 0);

    std::uint8_t& at(int y, int x) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    // Edge-replicating read.
    std::uint8_t clamped(int y, int x) const;

    GrayImage crop(int y, int x, int h, int w) const;
    // Copy with `margin` pixels of edge replication on every side.
    GrayImage pad_replicate(int margin) const;

    bool operator==(const GrayImage&) const = default;
};

// ITU-R BT.601 luma 0.299R + 0.587G + 0.114B, rounded half-up.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Reads binary PGM (P5), binary PPM (P6, converted to luma) or PNG.
/// Throws IoError when the file cannot be read and UnsupportedFormat for
/// anything else, including malformed headers.
GrayImage load_image(const std::filesystem::path& path);

/// Writes PNG when the extension is .png, binary PGM otherwise.
void save_image(const GrayImage& img, const std::filesystem::path& path);

} // namespace docsr
