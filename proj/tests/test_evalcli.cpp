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

#include "support.hpp"

#include "docsr/bicubic.hpp"
#include "docsr/cli.hpp"
#include "docsr/error.hpp"
#include "docsr/evaluate.hpp"
#include "docsr/srnet.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace docsr;
using docsr::test::random_image;
using docsr::test::TempDir;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args)
{
    args.insert(args.begin(), "docsr");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> lines;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        lines.push_back(l);
    return lines;
}

} // namespace

TEST_SUITE("psnr")
{
    TEST_CASE("identical images")
    {
        const GrayImage a = random_image(20, 30, 1);
        CHECK(std::isinf(psnr(a, a)));
        CHECK(psnr(a, a) > 0);
    }

    TEST_CASE("full-scale error is zero dB")
    {
        CHECK(psnr(GrayImage(8, 8, 0), GrayImage(8, 8, 255)) == doctest::Approx(0.0).epsilon(1e-12));
    }

    TEST_CASE("forty dB from a mixed error pattern")
    {
        // 999 pixels off by 2 and 1001 off by 3: MSE = 13005 / 2000 = 2.55^2.
        GrayImage ref(40, 50, 100), test = ref;
        for (int i = 0; i < 2000; ++i)
            test.pixels[i] = static_cast<std::uint8_t>(i < 999 ? 102 : 97);
        CHECK(std::abs(psnr(ref, test) - 40.0) < 1e-9);
    }

    TEST_CASE("symmetric and shape checked")
    {
        const GrayImage a = random_image(17, 19, 2), b = random_image(17, 19, 3);
        CHECK(psnr(a, b) == psnr(b, a));
        CHECK_THROWS_AS(psnr(a, random_image(19, 17, 2)), ShapeMismatch);
    }

    TEST_CASE("uniform offsets follow the log law")
    {
        const GrayImage ref(10, 10, 50);
        double prev = INFINITY;
        for (int k = 1; k <= 40; ++k) {
            const double v = psnr(ref, GrayImage(10, 10, static_cast<std::uint8_t>(50 + k)));
            CHECK(v == doctest::Approx(20.0 * std::log10(255.0 / k)).epsilon(1e-12));
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_SUITE("evaluation")
{
    TEST_CASE("identity reconstructor scores like bicubic")
    {
        const std::vector<TestPage> pages{{"a", "en", "150", random_image(40, 40, 4)},
                                          {"b", "en", "150", random_image(33, 21, 5)}};
        const EvalReport rep = evaluate_pages(pages, [](const GrayImage& g) { return g; });
        REQUIRE(rep.rows.size() == 2);
        for (const auto& r : rep.rows) {
            CHECK(r.model_db == r.bicubic_db);
            CHECK(r.gain_db == 0.0);
            CHECK(r.bicubic_db == psnr(pages[&r - rep.rows.data()].image, degrade(pages[&r - rep.rows.data()].image)));
        }
    }

    TEST_CASE("too small pages are rejected")
    {
        const std::vector<TestPage> pages{{"tiny", "en", "150", GrayImage(12, 40, 9)}};
        CHECK_THROWS_AS(evaluate_pages(pages, [](const GrayImage& g) { return g; }), PageTooSmall);
    }

    TEST_CASE("group means are per-image averages")
    {
        const EvalReport rep = summarize({{"p1", "en", "150", 20.0, 24.0, 4.0},
                                          {"p2", "de", "100", 30.0, 31.0, 1.0},
                                          {"p3", "en", "150", 22.0, 22.0, 0.0}});
        REQUIRE(rep.groups.size() == 2);
        CHECK(rep.groups[0].language == "en");
        CHECK(rep.groups[0].count == 2);
        CHECK(rep.groups[0].bicubic_db == doctest::Approx(21.0));
        CHECK(rep.groups[0].gain_db == doctest::Approx(2.0));
        REQUIRE(rep.overall);
        CHECK(rep.overall->count == 3);
        CHECK(rep.overall->model_db == doctest::Approx(77.0 / 3));
        CHECK(rep.overall->gain_db == doctest::Approx(5.0 / 3));
    }
}

TEST_SUITE("report")
{
    const EvalReport sample = summarize({{"p1", "en", "150", 20.0, 24.0, 4.0}, {"p2", "en", "150", 30.5, 30.5, 0.0}});

    TEST_CASE("empty report has only a header")
    {
        CHECK(render_report(summarize({}), ReportFormat::Csv) == "id,bicubic_db,model_db,gain_db\n");
        const auto text = split_lines(render_report(summarize({}), ReportFormat::Text));
        CHECK(text.size() == 2);
    }

    TEST_CASE("csv layout")
    {
        const auto lines = split_lines(render_report(sample, ReportFormat::Csv));
        REQUIRE(lines.size() == 5);
        CHECK(lines[0] == "id,bicubic_db,model_db,gain_db");
        CHECK(lines[1] == "p1,20.00,24.00,4.00");
        CHECK(lines[2] == "p2,30.50,30.50,0.00");
        CHECK(lines[3] == "mean:en_150,25.25,27.25,2.00");
        CHECK(lines[4] == "mean:all,25.25,27.25,2.00");
    }

    TEST_CASE("text lists rows and group means")
    {
        const std::string text = render_report(sample, ReportFormat::Text);
        CHECK(text.find("p1") != std::string::npos);
        CHECK(text.find("4.00") != std::string::npos);
        CHECK(text.find("27.25") != std::string::npos);
    }

    TEST_CASE("json round trip")
    {
        EvalReport rep = sample;
        rep.rows.push_back({"same", "xx", "75", 18.0, INFINITY, INFINITY});
        rep = summarize(rep.rows);
        const std::string json = render_report(rep, ReportFormat::Json);
        const EvalReport back = parse_report_json(json);
        CHECK(back == rep);
        CHECK(render_report(back, ReportFormat::Json) == json);
        CHECK(nlohmann::json::parse(json).at("averaging") == "per-image");
        CHECK_THROWS_AS(parse_report_json("{\"rows\": 3}"), FormatError);
        CHECK_THROWS_AS(parse_report_json("not json"), FormatError);
    }
}

TEST_SUITE("test pages")
{
    TEST_CASE("groups from file names and manifests")
    {
        TempDir dir("pages");
        save_image(random_image(20, 20, 1), dir / "en_150_b.pgm");
        save_image(random_image(20, 20, 2), dir / "de_100_a.png");
        save_image(random_image(20, 20, 3), dir / "plain.pgm");
        std::ofstream(dir / "notes.txt") << "skip";

        const auto pages = load_test_pages(dir.path());
        REQUIRE(pages.size() == 3);
        CHECK(pages[0].language == "de");
        CHECK(pages[0].dpi == "100");
        CHECK(pages[1].language == "en");
        CHECK(pages[2].language == "unknown");
        CHECK(pages[2].dpi == "unknown");

        std::ofstream(dir / "m.json") << R"([{"path": "plain.pgm", "language": "fr", "dpi": "300"}])";
        const auto listed = load_test_pages(dir.path(), dir / "m.json");
        REQUIRE(listed.size() == 1);
        CHECK(listed[0].language == "fr");
        CHECK(listed[0].image == load_image(dir / "plain.pgm"));
    }
}

TEST_SUITE("command line")
{
    TEST_CASE("grad-check passes")
    {
        const CliRun r = run({"grad-check"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("PASS") != std::string::npos);
    }

    TEST_CASE("usage errors")
    {
        CHECK(run({}).code == kExitUsage);
        CHECK(run({"no-such-command"}).code == kExitUsage);
        CHECK(run({"train"}).code == kExitUsage);
        CHECK(run({"eval", "/nonexistent/model.dsr", "/nonexistent"}).code == kExitUsage);
    }

    TEST_CASE("super-resolve, eval and inspect")
    {
        TempDir dir("cli");
        SrModel m = build_model(Activation::PReLU, 3);
        m.metadata["epochs"] = "0";
        save_model(m, dir / "m.dsr");
        std::filesystem::create_directories(dir / "test");
        save_image(random_image(24, 30, 1), dir / "test" / "en_150_x.pgm");
        save_image(random_image(32, 32, 2), dir / "test" / "en_150_y.pgm");
        save_image(GrayImage(10, 10, 7), dir / "small.pgm");

        const CliRun sr = run({"super-resolve", (dir / "m.dsr").string(), (dir / "test" / "en_150_x.pgm").string(),
                               "-o", (dir / "out.png").string()});
        CHECK(sr.code == kExitOk);
        const GrayImage out = load_image(dir / "out.png");
        CHECK(out.height == 24);
        CHECK(out.width == 30);

        const CliRun up = run({"super-resolve", (dir / "m.dsr").string(), (dir / "test" / "en_150_x.pgm").string(),
                               "--upscale", "-o", (dir / "up.pgm").string()});
        CHECK(up.code == kExitOk);
        CHECK(load_image(dir / "up.pgm").height == 48);

        const CliRun small = run({"super-resolve", (dir / "m.dsr").string(), (dir / "small.pgm").string(), "-o",
                                  (dir / "never.pgm").string()});
        CHECK(small.code == kExitRuntime);
        CHECK(small.err.find("PageTooSmall") != std::string::npos);

        const CliRun ev =
            run({"eval", (dir / "m.dsr").string(), (dir / "test").string(), "--format", "csv"});
        REQUIRE(ev.code == kExitOk);
        const auto lines = split_lines(ev.out);
        REQUIRE(lines.size() == 5);
        CHECK(lines[0] == "id,bicubic_db,model_db,gain_db");
        CHECK(lines[1].rfind("en_150_x,", 0) == 0);
        CHECK(lines[4].rfind("mean:all,", 0) == 0);

        const CliRun js = run({"eval", (dir / "m.dsr").string(), (dir / "test").string(), "--format", "json", "-o",
                               (dir / "rep.json").string()});
        REQUIRE(js.code == kExitOk);
        std::ifstream f(dir / "rep.json");
        const std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        CHECK(parse_report_json(body).rows.size() == 2);

        const CliRun info = run({"inspect", (dir / "m.dsr").string()});
        CHECK(info.code == kExitOk);
        CHECK(info.out.find("prelu") != std::string::npos);
    }

    TEST_CASE("gen-data and train end to end")
    {
        TempDir dir("e2e");
        std::filesystem::create_directories(dir / "corpus");
        save_image(random_image(40, 40, 11), dir / "corpus" / "a.pgm");
        const CliRun gen = run({"gen-data", (dir / "corpus").string(), "-o", (dir / "d.bin").string(), "--count",
                                "64", "--no-reject-blank"});
        REQUIRE(gen.code == kExitOk);
        const CliRun tr = run({"train", (dir / "d.bin").string(), "-o", (dir / "m.dsr").string(), "--epochs", "2",
                               "--log", (dir / "log.jsonl").string(), "--threads", "1"});
        REQUIRE(tr.code == kExitOk);
        CHECK(std::filesystem::exists(dir / "m.dsr"));
        CHECK(split_lines([&] {
                  std::ifstream f(dir / "log.jsonl");
                  return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
              }()).size() == 3);
        const CliRun bad = run({"train", (dir / "d.bin").string(), "-o", (dir / "m2.dsr").string(), "--lr", "-1"});
        CHECK(bad.code != kExitOk);
    }
}
