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

#include "docsr/patches.hpp"
#include "docsr/srnet.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace docsr {

struct TrainConfig {
    int epochs = 50;
    double learning_rate = 1e-4;
    int batch_size = 32;
    double momentum = 0.9;
    std::uint64_t rng_seed = 0;
    Activation activation = Activation::PReLU;
    int checkpoint_every = 10; // epochs; 0 disables periodic checkpoints
    double validation_fraction = 0.0;
    std::optional<std::filesystem::path> checkpoint_dir;
    std::optional<std::filesystem::path> log_path; // line-delimited JSON
    int threads = 0;                               // 0: OpenMP default

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct SlopeSummary {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

struct EpochRecord {
    int epoch = 0; // 1-based
    double train_loss = 0.0;
    std::optional<double> val_loss;
    double seconds = 0.0;
    std::optional<SlopeSummary> slopes;
};

struct TrainLog {
    std::vector<EpochRecord> epochs;
};

/// Permutation of 0..n-1, deterministic in (seed, epoch).
std::vector<std::size_t> shuffle_indices(std::size_t n, std::uint64_t epoch, std::uint64_t seed);

/// Batch gradient for the MSE loss. Every sample backpropagates into its own
/// buffer (in parallel); the buffers are then summed in sample order into the
/// model's gradient, so the result does not depend on the thread count.
/// Returns the batch loss.
double accumulate_batch_gradient(Network<float>& net, std::span<const PatchPair* const> batch);

// Mean per-pair squared Frobenius error, forward only.
double evaluate_loss(const Network<float>& net, std::span<const PatchPair> pairs);

/// Mini-batch SGD with momentum over `pairs`. Per epoch: shuffle, then for
/// each batch (last one may be short) zero grads, forward, loss, backward,
/// step. A validation split, when requested, is carved off once before
/// training by a seeded shuffle. Throws EmptyDataset, NonFiniteLoss.
TrainLog train(SrModel& model, std::span<const PatchPair> pairs, const TrainConfig& cfg,
               const std::function<void(const EpochRecord&)>& on_epoch = {});

/// Saves the model as model_epoch_NNNN.dsr in `dir` and appends the epoch's
/// log record to dir/checkpoints.jsonl. Returns the model path.
std::filesystem::path checkpoint(const SrModel& model, const TrainLog& log, const std::filesystem::path& dir,
                                 int epoch);

std::string to_json_line(const EpochRecord& r);
std::string config_json_line(const TrainConfig& cfg);
std::optional<SlopeSummary> slope_summary(const SrModel& model);

} // namespace docsr
