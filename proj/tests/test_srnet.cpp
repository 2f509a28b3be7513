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

#include "docsr/activation.hpp"
#include "docsr/binio.hpp"
#include "docsr/error.hpp"
#include "docsr/normalize.hpp"
#include "docsr/patches.hpp"
#include "docsr/srnet.hpp"

#include <doctest.h>

#include <fstream>
#include <iterator>

using namespace docsr;
using docsr::test::random_image;
using docsr::test::random_tensor;
using docsr::test::TempDir;

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// A built model with non-zero biases and slopes away from their initial
// value, so round trips exercise every field.
SrModel perturbed_model(Activation act, std::uint64_t seed)
{
    SrModel m = build_model(act, seed);
    float k = 0.01f;
    for (auto& l : m.net.layers) {
        for (float& b : l.params.value.biases)
            b = (k += 0.003f);
        for (float& a : l.params.value.slopes)
            a = 0.1f + (k += 0.002f);
    }
    m.norm = NormStats{0.8731};
    m.metadata = {{"epochs", "3"}, {"note", "ü test"}};
    return m;
}

} // namespace

TEST_SUITE("architecture")
{
    TEST_CASE("layer table")
    {
        const auto specs = sr_layer_specs(Activation::PReLU);
        const int dims[5][3] = {{5, 1, 64}, {1, 64, 44}, {1, 44, 24}, {1, 24, 14}, {3, 14, 1}};
        for (int i = 0; i < 5; ++i) {
            CHECK(specs[i].kernel == dims[i][0]);
            CHECK(specs[i].in_channels == dims[i][1]);
            CHECK(specs[i].out_channels == dims[i][2]);
            CHECK(specs[i].stride == 1);
            CHECK(specs[i].zero_pad == 0);
            CHECK(specs[i].activation == (i < 4 ? Activation::PReLU : Activation::None));
        }
    }

    TEST_CASE("parameter counts")
    {
        // 5*5*1*64+64 + 64*44+44 + 44*24+24 + 24*14+14 + 3*3*14+1
        const std::size_t base = 1664 + 2860 + 1080 + 350 + 127;
        CHECK(base == 6081);
        CHECK(build_model(Activation::ReLU, 1).net.parameter_count() == base);
        CHECK(build_model(Activation::PReLU, 1).net.parameter_count() == base + 64 + 44 + 24 + 14);
    }

    TEST_CASE("relu and prelu builds share weights")
    {
        const SrModel r = build_model(Activation::ReLU, 5);
        const SrModel p = build_model(Activation::PReLU, 5);
        for (int i = 0; i < 5; ++i) {
            CHECK(r.net.layers[i].params.value.weights == p.net.layers[i].params.value.weights);
            CHECK(r.net.layers[i].params.value.biases == p.net.layers[i].params.value.biases);
            CHECK(r.net.layers[i].params.value.slopes.empty());
            CHECK(p.net.layers[i].params.value.slopes.size() == (i < 4 ? p.net.layers[i].spec.out_channels : 0u));
        }
    }

    TEST_CASE("shape chain")
    {
        const SrModel m = build_model(Activation::ReLU, 1);
        ForwardTrace<float> trace;
        const auto out = m.net.forward(random_tensor({16, 16, 1}, 2), trace);
        CHECK(trace.pre[0].shape() == Shape3{12, 12, 64});
        CHECK(trace.pre[1].shape() == Shape3{12, 12, 44});
        CHECK(trace.pre[2].shape() == Shape3{12, 12, 24});
        CHECK(trace.pre[3].shape() == Shape3{12, 12, 14});
        CHECK(out.shape() == Shape3{10, 10, 1});
    }
}

TEST_SUITE("forward")
{
    TEST_CASE("zero input on a fresh model")
    {
        for (Activation a : {Activation::ReLU, Activation::PReLU}) {
            const auto out = forward_patch(build_model(a, 3), Tensor3<float>(Shape3{16, 16, 1}));
            for (float v : out.values())
                CHECK(v == 0.0f);
        }
    }

    TEST_CASE("stage by stage composition")
    {
        SrModel m = perturbed_model(Activation::PReLU, 4);
        const auto x = random_tensor({16, 16, 1}, 5);
        Tensor3<float> h = x;
        for (const auto& l : m.net.layers) {
            h = conv_forward(h, l.params, l.spec);
            if (l.spec.activation == Activation::PReLU)
                h = prelu_forward<float>(h, l.params.value.slopes);
        }
        CHECK(forward_patch(m, x) == h);

        m = perturbed_model(Activation::ReLU, 4);
        h = x;
        for (const auto& l : m.net.layers) {
            h = conv_forward(h, l.params, l.spec);
            if (l.spec.activation == Activation::ReLU)
                h = relu_forward(h);
        }
        CHECK(forward_patch(m, x) == h);
    }

    TEST_CASE("wrong patch size")
    {
        const SrModel m = build_model(Activation::ReLU, 1);
        CHECK_THROWS_AS(forward_patch(m, Tensor3<float>(Shape3{17, 16, 1})), ShapeMismatch);
        CHECK_THROWS_AS(forward_patch(m, Tensor3<float>(Shape3{16, 16, 2})), ShapeMismatch);
    }
}

TEST_SUITE("tiling")
{
    TEST_CASE("tile plan covers the page")
    {
        for (auto [h, w] : {std::pair{16, 16}, std::pair{100, 100}, std::pair{37, 61}, std::pair{20, 31}}) {
            const TilePlan plan = plan_tiles(h, w);
            std::vector<int> rows(h, 0), cols(w, 0);
            for (int a : plan.row_anchors)
                for (int y = a; y < a + kHrPatch; ++y)
                    rows.at(y) = 1;
            for (int a : plan.col_anchors)
                for (int x = a; x < a + kHrPatch; ++x)
                    cols.at(x) = 1;
            CHECK(std::count(rows.begin(), rows.end(), 0) == 0);
            CHECK(std::count(cols.begin(), cols.end(), 0) == 0);
            for (std::size_t i = 1; i + 1 < plan.row_anchors.size(); ++i)
                CHECK(plan.row_anchors[i] - plan.row_anchors[i - 1] == kHrPatch);
        }
        CHECK(plan_tiles(100, 100).tile_count() == 100);
        CHECK_THROWS_AS(plan_tiles(15, 40), PageTooSmall);
    }

    TEST_CASE("page in, page out")
    {
        const SrModel m = perturbed_model(Activation::PReLU, 1);
        const GrayImage page = random_image(100, 100, 3);
        const GrayImage out = super_resolve_page(m, page);
        CHECK(out.height == 100);
        CHECK(out.width == 100);
        CHECK(out.pixels.size() == 100u * 100u);
        for (auto [h, w] : {std::pair{16, 16}, std::pair{23, 47}, std::pair{41, 19}}) {
            const GrayImage o = super_resolve_page(m, random_image(h, w, 9));
            CHECK(o.height == h);
            CHECK(o.width == w);
        }
        CHECK_THROWS_AS(super_resolve_page(m, GrayImage(10, 10)), PageTooSmall);
    }

    TEST_CASE("interior blocks equal a single forward on their window")
    {
        const SrModel m = perturbed_model(Activation::PReLU, 2);
        const GrayImage page = random_image(57, 43, 4);
        const GrayImage out = super_resolve_page(m, page);
        // Anchored blocks and deliberately misaligned ones.
        for (auto [y, x] : {std::pair{10, 10}, std::pair{20, 30}, std::pair{3, 3}, std::pair{7, 29}, std::pair{44, 30}}) {
            const auto block = forward_patch(m, normalize(page.crop(y - 3, x - 3, 16, 16), m.norm));
            const GrayImage expected = denormalize(block, m.norm);
            CAPTURE(y);
            CAPTURE(x);
            CHECK(out.crop(y, x, 10, 10) == expected);
        }
    }

    TEST_CASE("border tiles see replicated edges")
    {
        const SrModel m = perturbed_model(Activation::ReLU, 3);
        const GrayImage page = random_image(30, 30, 5);
        const GrayImage padded = page.pad_replicate(3);
        const GrayImage out = super_resolve_page(m, page);
        const auto corner = forward_patch(m, normalize(padded.crop(0, 0, 16, 16), m.norm));
        CHECK(out.crop(0, 0, 10, 10) == denormalize(corner, m.norm));
        const auto last = forward_patch(m, normalize(padded.crop(20, 20, 16, 16), m.norm));
        CHECK(out.crop(20, 20, 10, 10) == denormalize(last, m.norm));
    }

    TEST_CASE("repeatable output")
    {
        const SrModel m = perturbed_model(Activation::PReLU, 6);
        const GrayImage page = random_image(64, 80, 7);
        CHECK(super_resolve_page(m, page) == super_resolve_page(m, page));
    }
}

TEST_SUITE("model file")
{
    TEST_CASE("save, load, save is byte identical")
    {
        TempDir dir("model");
        for (Activation a : {Activation::ReLU, Activation::PReLU}) {
            const SrModel m = perturbed_model(a, 8);
            save_model(m, dir / "a.dsr");
            const SrModel back = load_model(dir / "a.dsr");
            save_model(back, dir / "b.dsr");
            CHECK(slurp(dir / "a.dsr") == slurp(dir / "b.dsr"));
            CHECK(back.activation == a);
            CHECK(back.norm == m.norm);
            CHECK(back.metadata == m.metadata);
            for (int i = 0; i < 5; ++i) {
                CHECK(back.net.layers[i].spec == m.net.layers[i].spec);
                CHECK(back.net.layers[i].params.value == m.net.layers[i].params.value);
            }
        }
    }

    TEST_CASE("header layout")
    {
        const auto bytes = serialize_model(build_model(Activation::PReLU, 1));
        REQUIRE(bytes.size() > 16);
        CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "DSR1");
        binio::Reader r{std::span(bytes).subspan(4)};
        CHECK(r.u32() == 1u);
        CHECK(r.u8() == 1); // PReLU
        CHECK(r.u8() == 5);
        CHECK(r.u16() == 5);
        CHECK(r.u16() == 1);
        CHECK(r.u16() == 64);
        CHECK(binio::crc32(std::span(bytes).first(bytes.size() - 4)) ==
              binio::Reader(std::span(bytes).last(4)).u32());
    }

    TEST_CASE("truncated file")
    {
        const auto bytes = serialize_model(perturbed_model(Activation::PReLU, 1));
        for (std::size_t cut : {std::size_t{1}, std::size_t{5}, std::size_t{40}, bytes.size() / 2, bytes.size() - 3})
            CHECK_THROWS_AS(deserialize_model(std::span(bytes).first(cut)), FormatError);
        TempDir dir("trunc");
        {
            std::ofstream f(dir / "t.dsr", std::ios::binary);
            f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size() - 10));
        }
        CHECK_THROWS_AS(load_model(dir / "t.dsr"), FormatError);
        CHECK_THROWS_AS(load_model(dir / "missing.dsr"), IoError);
    }

    TEST_CASE("declared metadata length disagrees with payload")
    {
        const SrModel m = perturbed_model(Activation::ReLU, 1);
        auto bytes = serialize_model(m);
        bytes.resize(bytes.size() - 4);
        // The u32 length prefix sits right before the JSON text.
        const std::string text(bytes.begin(), bytes.end());
        const std::size_t json_at = text.rfind('{');
        REQUIRE(json_at != std::string::npos);
        const std::size_t prefix = json_at - 4;
        REQUIRE(binio::Reader(std::span(bytes).subspan(prefix, 4)).u32() == bytes.size() - json_at);
        bytes[prefix] += 3;
        binio::Writer w;
        w.buffer() = bytes;
        binio::seal(w);
        CHECK_THROWS_AS(deserialize_model(w.buffer()), FormatError);
    }

    TEST_CASE("corruption and bad headers")
    {
        auto bytes = serialize_model(perturbed_model(Activation::PReLU, 1));
        auto flipped = bytes;
        flipped[100] ^= 0x01;
        CHECK_THROWS_AS(deserialize_model(flipped), ChecksumError);

        auto reseal = [](std::vector<std::uint8_t> b) {
            b.resize(b.size() - 4);
            binio::Writer w;
            w.buffer() = std::move(b);
            binio::seal(w);
            return w.buffer();
        };
        auto magic = bytes;
        magic[3] = '2';
        CHECK_THROWS_AS(deserialize_model(reseal(magic)), FormatError);
        auto version = bytes;
        version[4] = 9;
        CHECK_THROWS_AS(deserialize_model(reseal(version)), FormatError);
        auto act = bytes;
        act[8] = 7;
        CHECK_THROWS_AS(deserialize_model(reseal(act)), FormatError);
        auto layers = bytes;
        layers[9] = 4;
        CHECK_THROWS_AS(deserialize_model(reseal(layers)), FormatError);
        auto shape = bytes;
        shape[12] = 2; // first layer in_ch
        CHECK_THROWS_AS(deserialize_model(reseal(shape)), FormatError);
    }
}
