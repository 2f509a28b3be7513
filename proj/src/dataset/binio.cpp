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

#include <zlib.h>

namespace docsr::binio {

std::string Reader::bytes(std::size_t n)
{
    if (n > remaining())
        throw FormatError("unexpected end of data");
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
}

std::uint64_t Reader::get(int n)
{
    if (static_cast<std::size_t>(n) > remaining())
        throw FormatError("unexpected end of data");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
        v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
}

void Crc32::update(std::span<const std::uint8_t> data)
{
    // zlib takes uInt lengths; feed large spans in chunks.
    constexpr std::size_t kChunk = 1u << 30;
    while (!data.empty()) {
        const std::size_t n = std::min(data.size(), kChunk);
        crc_ = static_cast<std::uint32_t>(::crc32(crc_, data.data(), static_cast<uInt>(n)));
        data = data.subspan(n);
    }
}

std::uint32_t crc32(std::span<const std::uint8_t> data)
{
    Crc32 c;
    c.update(data);
    return c.value();
}

void seal(Writer& w)
{
    w.u32(crc32(w.buffer()));
}

std::span<const std::uint8_t> unseal(std::span<const std::uint8_t> data)
{
    if (data.size() < 4)
        throw FormatError("file too short for checksum");
    const auto body = data.first(data.size() - 4);
    Reader tail(data.last(4));
    if (tail.u32() != crc32(body))
        throw ChecksumError("CRC32 mismatch");
    return body;
}

} // namespace docsr::binio
