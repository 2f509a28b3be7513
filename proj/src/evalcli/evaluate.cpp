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
#include "docsr/evaluate.hpp"
#include "docsr/patches.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <regex>

namespace docsr {

EvalReport summarize(std::vector<EvalRow> rows)
{
    EvalReport rep;
    rep.rows = std::move(rows);
    if (rep.rows.empty())
        return rep;
    auto accumulate = [](GroupSummary& g, const EvalRow& r) {
        ++g.count;
        g.bicubic_db += r.bicubic_db;
        g.model_db += r.model_db;
        g.gain_db += r.gain_db;
    };
    auto finish = [](GroupSummary& g) {
        g.bicubic_db /= g.count;
        g.model_db /= g.count;
        g.gain_db /= g.count;
    };
    GroupSummary all{"all", "all", 0, 0.0, 0.0, 0.0};
    for (const auto& r : rep.rows) {
        auto it = std::find_if(rep.groups.begin(), rep.groups.end(),
                               [&](const GroupSummary& g) { return g.language == r.language && g.dpi == r.dpi; });
        if (it == rep.groups.end()) {
            rep.groups.push_back({r.language, r.dpi, 0, 0.0, 0.0, 0.0});
            it = rep.groups.end() - 1;
        }
        accumulate(*it, r);
        accumulate(all, r);
    }
    for (auto& g : rep.groups)
        finish(g);
    finish(all);
    rep.overall = all;
    return rep;
}

EvalReport evaluate_pages(const std::vector<TestPage>& pages, const Reconstructor& reconstruct)
{
    std::vector<EvalRow> rows;
    rows.reserve(pages.size());
    for (const auto& page : pages) {
        if (page.image.height < kLrPatch || page.image.width < kLrPatch)
            throw PageTooSmall("test page " + page.id + " is smaller than 16x16");
        const GrayImage degraded = degrade(page.image);
        const GrayImage restored = reconstruct(degraded);
        EvalRow r{page.id, page.language, page.dpi, psnr(page.image, degraded), psnr(page.image, restored), 0.0};
        r.gain_db = r.model_db - r.bicubic_db;
        rows.push_back(std::move(r));
    }
    return summarize(std::move(rows));
}

EvalReport evaluate_corpus(const SrModel& model, const std::vector<TestPage>& pages)
{
    return evaluate_pages(pages, [&](const GrayImage& degraded) { return super_resolve_page(model, degraded); });
}

std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::directory_iterator it(dir, ec);
    if (ec)
        throw IoError("cannot list directory " + dir.string());
    std::vector<std::filesystem::path> out;
    for (const auto& e : it) {
        if (!e.is_regular_file())
            continue;
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm" || ext == ".png" || ext == ".ppm")
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TestPage> load_test_pages(const std::filesystem::path& dir,
                                      const std::optional<std::filesystem::path>& manifest)
{
    std::vector<TestPage> pages;
    if (manifest) {
        std::ifstream f(*manifest);
        if (!f)
            throw IoError("cannot open manifest " + manifest->string());
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(std::string("bad manifest: ") + e.what());
        }
        if (!j.is_array())
            throw FormatError("manifest must be a JSON array");
        const auto base = manifest->parent_path();
        for (const auto& entry : j) {
            if (!entry.is_object() || !entry.contains("path"))
                throw FormatError("manifest entries need a \"path\"");
            const std::filesystem::path p = base / entry.at("path").get<std::string>();
            TestPage page;
            page.id = p.stem().string();
            if (entry.contains("language"))
                page.language = entry.at("language").get<std::string>();
            if (entry.contains("dpi")) {
                const auto& d = entry.at("dpi");
                page.dpi = d.is_string() ? d.get<std::string>() : d.dump();
            }
            page.image = load_image(p);
            pages.push_back(std::move(page));
        }
        return pages;
    }

    static const std::regex tagged(R"(([A-Za-z]+)_([0-9]+)_(.+))");
    for (const auto& p : list_images(dir)) {
        TestPage page;
        page.id = p.stem().string();
        std::smatch m;
        if (std::regex_match(page.id, m, tagged)) {
            page.language = m[1];
            page.dpi = m[2];
        }
        page.image = load_image(p);
        pages.push_back(std::move(page));
    }
    return pages;
}

} // namespace docsr
