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

#include "docsr/dataset_file.hpp"

#include "docsr/binio.hpp"
#include "docsr/error.hpp"

#include <array>
#include <cstring>

namespace docsr {

namespace {

constexpr char kMagic[4] = {'D', 'S', 'P', '1'};

void check_pair(const PatchPair& p)
{
    if (p.lr.shape() != Shape3{kLrPatch, kLrPatch, 1} || p.hr.shape() != Shape3{kHrPatch, kHrPatch, 1})
        throw ShapeMismatch("dataset pairs must be 16x16x1 / 10x10x1");
}

PatchPair decode_pair(binio::Reader& r)
{
    PatchPair p{Tensor3<float>(kLrPatch, kLrPatch, 1), Tensor3<float>(kHrPatch, kHrPatch, 1), {}};
    r.f32s(p.lr.values());
    r.f32s(p.hr.values());
    return p;
}

} // namespace

void write_dataset(std::span<const PatchPair> pairs, const NormStats& stats, const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    binio::Crc32 crc;
    auto emit = [&](binio::Writer& w) {
        crc.update(w.buffer());
        f.write(reinterpret_cast<const char*>(w.buffer().data()), static_cast<std::streamsize>(w.buffer().size()));
        w.buffer().clear();
    };

    binio::Writer w;
    w.bytes(std::string_view(kMagic, 4));
    w.u32(kDatasetVersion);
    w.u64(pairs.size());
    w.f64(stats.mean);
    w.f64(stats.scale);
    emit(w);
    for (const auto& p : pairs) {
        check_pair(p);
        w.f32s(p.lr.values());
        w.f32s(p.hr.values());
        if (w.buffer().size() >= (1u << 20))
            emit(w);
    }
    emit(w);
    w.u32(crc.value());
    f.write(reinterpret_cast<const char*>(w.buffer().data()), 4);
    if (!f)
        throw IoError("write failed: " + path.string());
}

DatasetReader::DatasetReader(const std::filesystem::path& path) : path_(path)
{
    file_.open(path, std::ios::binary);
    if (!file_)
        throw IoError("cannot open " + path.string());
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec)
        throw IoError("cannot stat " + path.string());
    if (size < kDatasetHeaderBytes + 4)
        throw FormatError("dataset file truncated: " + path.string());

    std::array<std::uint8_t, kDatasetHeaderBytes> header{};
    file_.read(reinterpret_cast<char*>(header.data()), header.size());
    binio::Reader r(header);
    if (r.bytes(4) != std::string_view(kMagic, 4))
        throw FormatError("not a dataset file (bad magic): " + path.string());
    if (const auto v = r.u32(); v != kDatasetVersion)
        throw FormatError("unsupported dataset version " + std::to_string(v));
    count_ = r.u64();
    stats_.mean = r.f64();
    stats_.scale = r.f64();
    const auto payload = size - kDatasetHeaderBytes - 4;
    if (count_ > payload / kDatasetPairBytes || count_ * kDatasetPairBytes != payload)
        throw FormatError("dataset header declares " + std::to_string(count_) + " pairs but payload holds " +
                          std::to_string(payload) + " bytes");

    binio::Crc32 crc;
    crc.update(header);
    std::vector<std::uint8_t> chunk(1u << 20);
    std::uint64_t left = payload;
    while (left > 0) {
        const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(left, chunk.size()));
        file_.read(reinterpret_cast<char*>(chunk.data()), static_cast<std::streamsize>(n));
        if (!file_)
            throw IoError("read failed: " + path.string());
        crc.update(std::span(chunk).first(n));
        left -= n;
    }
    std::array<std::uint8_t, 4> tail{};
    file_.read(reinterpret_cast<char*>(tail.data()), 4);
    if (!file_)
        throw IoError("read failed: " + path.string());
    if (binio::Reader(tail).u32() != crc.value())
        throw ChecksumError("dataset CRC32 mismatch: " + path.string());
    rewind();
}

void DatasetReader::rewind()
{
    file_.clear();
    file_.seekg(static_cast<std::streamoff>(kDatasetHeaderBytes));
    next_ = 0;
}

bool DatasetReader::next_batch(std::size_t batch_size, std::vector<PatchPair>& out)
{
    out.clear();
    if (next_ >= count_ || batch_size == 0)
        return false;
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(batch_size, count_ - next_));
    std::vector<std::uint8_t> buf(n * kDatasetPairBytes);
    file_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!file_)
        throw IoError("read failed: " + path_.string());
    binio::Reader r(buf);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(decode_pair(r));
    next_ += n;
    return true;
}

Dataset read_dataset(const std::filesystem::path& path)
{
    DatasetReader reader(path);
    Dataset ds;
    ds.stats = reader.stats();
    ds.pairs.reserve(reader.count());
    std::vector<PatchPair> batch;
    while (reader.next_batch(4096, batch))
        for (auto& p : batch)
            ds.pairs.push_back(std::move(p));
    return ds;
}

} // namespace docsr
