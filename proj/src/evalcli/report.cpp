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

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>

namespace docsr {

namespace {

std::string db(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    return fmt::format("{:.2f}", v);
}

nlohmann::json db_json(double v)
{
    if (std::isfinite(v))
        return v;
    return db(v);
}

double db_from_json(const nlohmann::json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return INFINITY;
        if (s == "-inf")
            return -INFINITY;
        if (s == "nan")
            return NAN;
    }
    throw FormatError("bad dB value in report: " + j.dump());
}

constexpr const char* kAveraging = "per-image";

std::string render_text(const EvalReport& r)
{
    std::string out = "# PSNR (dB) vs. original; group means average per-image PSNR\n";
    out += fmt::format("{:<28} {:>10} {:>10} {:>9}\n", "id", "bicubic_db", "model_db", "gain_db");
    for (const auto& row : r.rows)
        out += fmt::format("{:<28} {:>10} {:>10} {:>9}\n", row.id, db(row.bicubic_db), db(row.model_db),
                           db(row.gain_db));
    if (!r.rows.empty()) {
        out += "\n";
        out += fmt::format("{:<12} {:>6} {:>5} {:>10} {:>10} {:>9}\n", "language", "dpi", "n", "bicubic_db",
                           "model_db", "gain_db");
        auto group_line = [&](const GroupSummary& g) {
            out += fmt::format("{:<12} {:>6} {:>5} {:>10} {:>10} {:>9}\n", g.language, g.dpi, g.count,
                               db(g.bicubic_db), db(g.model_db), db(g.gain_db));
        };
        for (const auto& g : r.groups)
            group_line(g);
        if (r.overall)
            group_line(*r.overall);
    }
    return out;
}

std::string render_csv(const EvalReport& r)
{
    std::string out = "id,bicubic_db,model_db,gain_db\n";
    for (const auto& row : r.rows)
        out += fmt::format("{},{},{},{}\n", row.id, db(row.bicubic_db), db(row.model_db), db(row.gain_db));
    for (const auto& g : r.groups)
        out += fmt::format("mean:{}_{},{},{},{}\n", g.language, g.dpi, db(g.bicubic_db), db(g.model_db),
                           db(g.gain_db));
    if (r.overall)
        out += fmt::format("mean:all,{},{},{}\n", db(r.overall->bicubic_db), db(r.overall->model_db),
                           db(r.overall->gain_db));
    return out;
}

nlohmann::json group_json(const GroupSummary& g)
{
    return {{"language", g.language}, {"dpi", g.dpi},
            {"count", g.count},       {"bicubic_db", db_json(g.bicubic_db)},
            {"model_db", db_json(g.model_db)}, {"gain_db", db_json(g.gain_db)}};
}

GroupSummary group_from_json(const nlohmann::json& j)
{
    return {j.at("language").get<std::string>(), j.at("dpi").get<std::string>(), j.at("count").get<int>(),
            db_from_json(j.at("bicubic_db")),    db_from_json(j.at("model_db")), db_from_json(j.at("gain_db"))};
}

std::string render_json(const EvalReport& r)
{
    nlohmann::json j;
    j["averaging"] = kAveraging;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows)
        j["rows"].push_back({{"id", row.id},
                             {"language", row.language},
                             {"dpi", row.dpi},
                             {"bicubic_db", db_json(row.bicubic_db)},
                             {"model_db", db_json(row.model_db)},
                             {"gain_db", db_json(row.gain_db)}});
    j["groups"] = nlohmann::json::array();
    for (const auto& g : r.groups)
        j["groups"].push_back(group_json(g));
    j["overall"] = r.overall ? group_json(*r.overall) : nlohmann::json(nullptr);
    return j.dump(2) + "\n";
}

} // namespace

std::string render_report(const EvalReport& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::Text:
        return render_text(report);
    case ReportFormat::Csv:
        return render_csv(report);
    case ReportFormat::Json:
        return render_json(report);
    }
    return {};
}

EvalReport parse_report_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        EvalReport r;
        for (const auto& row : j.at("rows"))
            r.rows.push_back({row.at("id").get<std::string>(), row.at("language").get<std::string>(),
                              row.at("dpi").get<std::string>(), db_from_json(row.at("bicubic_db")),
                              db_from_json(row.at("model_db")), db_from_json(row.at("gain_db"))});
        for (const auto& g : j.at("groups"))
            r.groups.push_back(group_from_json(g));
        if (!j.at("overall").is_null())
            r.overall = group_from_json(j.at("overall"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad report JSON: ") + e.what());
    }
}

} // namespace docsr
