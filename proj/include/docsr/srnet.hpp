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
#include "docsr/network.hpp"
#include "docsr/normalize.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace docsr {

inline constexpr int kSrLayers = 5;

/// The five conv rows of the document super-resolution net:
///   5x5 1->64, 1x1 64->44, 1x1 44->24, 1x1 24->14, 3x3 14->1
/// all stride 1, no padding. Layers 1-4 carry `activation`; layer 5 is linear.
std::array<ConvSpec, kSrLayers> sr_layer_specs(Activation activation);

struct SrModel {
    Network<float> net;
    NormStats norm;
    Activation activation = Activation::ReLU;
    std::map<std::string, std::string> metadata;
};

// He-initialized model; layer i draws from mix_seed(seed, i).
SrModel build_model(Activation activation, std::uint64_t seed);

// Throws FormatError unless the layer table matches sr_layer_specs exactly.
void validate_architecture(const SrModel& model);

// 16x16x1 normalized patch -> 10x10x1 normalized prediction.
Tensor3<float> forward_patch(const SrModel& model, const Tensor3<float>& lr_patch);

/// Output tiling of a page. Anchors step by 10 over rows and columns; the
/// last anchor on each axis is pulled back to dim - 10 so the tiles cover
/// the page exactly. Input windows are the output windows dilated by 3 on
/// each side, addressed in the edge-replicated (padded) page.
struct TilePlan {
    int page_height = 0;
    int page_width = 0;
    std::vector<int> row_anchors;
    std::vector<int> col_anchors;

    std::size_t tile_count() const { return row_anchors.size() * col_anchors.size(); }
};

TilePlan plan_tiles(int page_height, int page_width);

/// Runs the model over a whole page (already in the upsampled frame) and
/// returns an image of the same size. Throws PageTooSmall below 16x16.
GrayImage super_resolve_page(const SrModel& model, const GrayImage& page);

// "DSR1" model file. save/load round-trip bit-exactly.
std::vector<std::uint8_t> serialize_model(const SrModel& model);
SrModel deserialize_model(std::span<const std::uint8_t> bytes);
void save_model(const SrModel& model, const std::filesystem::path& path);
SrModel load_model(const std::filesystem::path& path);

} // namespace docsr
