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
#include "docsr/patches.hpp"
#include "docsr/srnet.hpp"

#include <algorithm>

namespace docsr {

namespace {

std::vector<int> anchors(int dim)
{
    std::vector<int> a;
    for (int p = 0; p + kHrPatch <= dim; p += kHrPatch)
        a.push_back(p);
    if (a.back() + kHrPatch < dim)
        a.push_back(dim - kHrPatch);
    return a;
}

} // namespace

TilePlan plan_tiles(int page_height, int page_width)
{
    if (page_height < kLrPatch || page_width < kLrPatch)
        throw PageTooSmall("page must be at least 16x16, got " + std::to_string(page_height) + "x" +
                           std::to_string(page_width));
    return {page_height, page_width, anchors(page_height), anchors(page_width)};
}

GrayImage super_resolve_page(const SrModel& model, const GrayImage& page)
{
    const TilePlan plan = plan_tiles(page.height, page.width);
    validate_architecture(model);
    const Tensor3<float> padded = normalize(page.pad_replicate(kPatchMargin), model.norm);
    Tensor3<float> result(page.height, page.width, 1);

    const int nrows = static_cast<int>(plan.row_anchors.size());
    const int ncols = static_cast<int>(plan.col_anchors.size());
    // A pulled-back last tile overlaps its neighbour; it only writes the rows
    // and columns the neighbour did not, so every output pixel has one writer.
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < nrows; ++r) {
        const int ay = plan.row_anchors[r];
        const int y0 = r > 0 ? std::max(0, plan.row_anchors[r - 1] + kHrPatch - ay) : 0;
        Tensor3<float> window(kLrPatch, kLrPatch, 1);
        for (int ci = 0; ci < ncols; ++ci) {
            const int ax = plan.col_anchors[ci];
            const int x0 = ci > 0 ? std::max(0, plan.col_anchors[ci - 1] + kHrPatch - ax) : 0;
            // In the padded frame the 16x16 input window starts at the output anchor.
            for (int y = 0; y < kLrPatch; ++y)
                std::copy_n(padded.pixel(ay + y, ax), kLrPatch, window.pixel(y, 0));
            const Tensor3<float> out = model.net.forward(window);
            for (int y = y0; y < kHrPatch; ++y)
                std::copy_n(out.pixel(y, x0), kHrPatch - x0, result.pixel(ay + y, ax + x0));
        }
    }
    return denormalize(result, model.norm);
}

} // namespace docsr
