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

#include "docsr/normalize.hpp"
#include "docsr/patches.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <vector>

namespace docsr {

// "DSP1" container: magic, u32 version, u64 pair count, f64 mean, f64 scale,
// then per pair 256 + 100 little-endian f32 values, then CRC32 of everything
// before it. Patch sources are not stored.
inline constexpr std::uint32_t kDatasetVersion = 1;
inline constexpr std::size_t kDatasetHeaderBytes = 4 + 4 + 8 + 8 + 8;
inline constexpr std::size_t kDatasetPairBytes = (kLrPatch * kLrPatch + kHrPatch * kHrPatch) * 4;

struct Dataset {
    NormStats stats;
    std::vector<PatchPair> pairs;
};

void write_dataset(std::span<const PatchPair> pairs, const NormStats& stats, const std::filesystem::path& path);
Dataset read_dataset(const std::filesystem::path& path);

/// Streams a dataset file in fixed-size batches. The header, file length and
/// CRC are validated on open (the CRC pass reads the file in chunks).
class DatasetReader {
public:
    explicit DatasetReader(const std::filesystem::path& path);

    std::uint64_t count() const { return count_; }
    const NormStats& stats() const { return stats_; }

    // Fills `out` with up to batch_size pairs; false once the file is exhausted.
    bool next_batch(std::size_t batch_size, std::vector<PatchPair>& out);
    void rewind();

private:
    std::ifstream file_;
    std::filesystem::path path_;
    std::uint64_t count_ = 0;
    std::uint64_t next_ = 0;
    NormStats stats_;
};

} // namespace docsr
