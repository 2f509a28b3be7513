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

#include "docsr/binio.hpp"
#include "docsr/error.hpp"
#include "docsr/srnet.hpp"

#include <json.hpp>

#include <fstream>
#include <iterator>

namespace docsr {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'R', '1'};
constexpr std::uint32_t kModelVersion = 1;

std::uint8_t activation_code(Activation a)
{
    switch (a) {
    case Activation::ReLU:
        return 0;
    case Activation::PReLU:
        return 1;
    case Activation::None:
        break;
    }
    throw FormatError("model activation must be ReLU or PReLU");
}

} // namespace

std::vector<std::uint8_t> serialize_model(const SrModel& model)
{
    validate_architecture(model);
    binio::Writer w;
    w.bytes(std::string_view(kMagic, 4));
    w.u32(kModelVersion);
    w.u8(activation_code(model.activation));
    w.u8(static_cast<std::uint8_t>(model.net.layers.size()));
    for (const auto& l : model.net.layers) {
        w.u16(static_cast<std::uint16_t>(l.spec.kernel));
        w.u16(static_cast<std::uint16_t>(l.spec.in_channels));
        w.u16(static_cast<std::uint16_t>(l.spec.out_channels));
        w.f32s(l.params.value.weights);
        w.f32s(l.params.value.biases);
        w.f32s(l.params.value.slopes);
    }
    w.f64(model.norm.mean);
    w.f64(model.norm.scale);
    const std::string meta = nlohmann::json(model.metadata).dump();
    w.u32(static_cast<std::uint32_t>(meta.size()));
    w.bytes(meta);
    binio::seal(w);
    return std::move(w.buffer());
}

SrModel deserialize_model(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4 || std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != std::string_view(kMagic, 4))
        throw FormatError("not a model file (bad magic)");
    if (bytes.size() < 8)
        throw FormatError("model file truncated");
    // Structure is validated before the checksum so truncation reports as a
    // format error rather than a CRC mismatch.
    binio::Reader r(bytes.first(bytes.size() - 4));
    r.bytes(4);
    if (const auto v = r.u32(); v != kModelVersion)
        throw FormatError("unsupported model version " + std::to_string(v));

    SrModel m;
    const auto act = r.u8();
    if (act > 1)
        throw FormatError("unknown activation code " + std::to_string(act));
    m.activation = act == 0 ? Activation::ReLU : Activation::PReLU;
    const int layers = r.u8();
    const auto expected = sr_layer_specs(m.activation);
    if (layers != kSrLayers)
        throw FormatError("model declares " + std::to_string(layers) + " layers, expected 5");
    for (int i = 0; i < layers; ++i) {
        ConvSpec spec = expected[i];
        spec.kernel = r.u16();
        spec.in_channels = r.u16();
        spec.out_channels = r.u16();
        if (!(spec == expected[i]))
            throw FormatError("shape table of layer " + std::to_string(i + 1) + " does not match the architecture");
        LayerParams<float> p(spec);
        r.f32s(p.value.weights);
        r.f32s(p.value.biases);
        r.f32s(p.value.slopes);
        m.net.layers.push_back({spec, std::move(p)});
    }
    m.norm.mean = r.f64();
    m.norm.scale = r.f64();
    const auto meta_len = r.u32();
    if (meta_len != r.remaining())
        throw FormatError("metadata length " + std::to_string(meta_len) + " does not match remaining payload " +
                          std::to_string(r.remaining()));
    try {
        m.metadata = nlohmann::json::parse(r.bytes(meta_len)).get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad model metadata: ") + e.what());
    }
    binio::unseal(bytes);
    return m;
}

void save_model(const SrModel& model, const std::filesystem::path& path)
{
    const auto bytes = serialize_model(model);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw IoError("write failed: " + path.string());
}

SrModel load_model(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open " + path.string());
    const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    return deserialize_model(bytes);
}

} // namespace docsr
