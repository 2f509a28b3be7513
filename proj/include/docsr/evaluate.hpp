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
#include "docsr/srnet.hpp"

#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace docsr {

/// PSNR in dB: 20 log10(255 / RMSE), RMSE over all H*W pixels computed in
/// double. Identical images give +infinity. Throws ShapeMismatch.
double psnr(const GrayImage& reference, const GrayImage& test);

struct TestPage {
    std::string id;
    std::string language = "unknown";
    std::string dpi = "unknown";
    GrayImage image;
};

struct EvalRow {
    std::string id;
    std::string language;
    std::string dpi;
    double bicubic_db = 0.0;
    double model_db = 0.0;
    double gain_db = 0.0;
    bool operator==(const EvalRow&) const = default;
};

// Arithmetic means of the per-image rows of one (language, dpi) group.
struct GroupSummary {
    std::string language;
    std::string dpi;
    int count = 0;
    double bicubic_db = 0.0;
    double model_db = 0.0;
    double gain_db = 0.0;
    bool operator==(const GroupSummary&) const = default;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    std::vector<GroupSummary> groups; // first-appearance order
    std::optional<GroupSummary> overall;
    bool operator==(const EvalReport&) const = default;
};

// Recomputes groups and overall means from rows.
EvalReport summarize(std::vector<EvalRow> rows);

using Reconstructor = std::function<GrayImage(const GrayImage& degraded)>;

/// For each page: degrade it, score the degraded frame (the bicubic
/// reconstruction) and `reconstruct(degraded)` against the original.
EvalReport evaluate_pages(const std::vector<TestPage>& pages, const Reconstructor& reconstruct);
EvalReport evaluate_corpus(const SrModel& model, const std::vector<TestPage>& pages);

/// Loads test pages. With a manifest (JSON array of {path, language, dpi},
/// paths relative to the manifest), that list is used in order; otherwise
/// every .pgm/.png/.ppm file in `dir` sorted by name, with groups parsed from
/// names of the form <language>_<dpi>_<id>.
std::vector<TestPage> load_test_pages(const std::filesystem::path& dir,
                                      const std::optional<std::filesystem::path>& manifest = std::nullopt);

// Lists image files (.pgm/.png/.ppm) in a directory, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

enum class ReportFormat { Text, Csv, Json };

std::string render_report(const EvalReport& report, ReportFormat format);
// Inverse of the JSON rendering. Throws FormatError.
EvalReport parse_report_json(const std::string& text);

} // namespace docsr
