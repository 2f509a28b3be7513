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

#include "docsr/trainer.hpp"

#include "docsr/error.hpp"
#include "docsr/loss.hpp"
#include "docsr/optimizer.hpp"
#include "docsr/parallel.hpp"
#include "docsr/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace docsr {

void TrainConfig::validate() const
{
    if (epochs < 1)
        throw std::invalid_argument("epochs must be >= 1");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
        throw std::invalid_argument("learning rate must be finite and >= 0");
    if (batch_size < 1)
        throw std::invalid_argument("batch size must be >= 1");
    if (!(momentum >= 0.0 && momentum < 1.0))
        throw std::invalid_argument("momentum must be in [0, 1)");
    if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
        throw std::invalid_argument("validation fraction must be in [0, 1)");
    if (checkpoint_every < 0)
        throw std::invalid_argument("checkpoint interval must be >= 0");
}

std::vector<std::size_t> shuffle_indices(std::size_t n, std::uint64_t epoch, std::uint64_t seed)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(mix_seed(seed, epoch));
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

double accumulate_batch_gradient(Network<float>& net, std::span<const PatchPair* const> batch)
{
    const int n = static_cast<int>(batch.size());
    if (n == 0)
        throw EmptyDataset("empty batch");
    // Shapes are checked here; nothing below may throw inside a parallel region.
    const Shape3 out_shape = net.output_shape({kLrPatch, kLrPatch, 1});
    for (const PatchPair* p : batch)
        if (p->lr.shape() != Shape3{kLrPatch, kLrPatch, 1} || p->hr.shape() != out_shape)
            throw ShapeMismatch("training pair shapes do not match the network");
    std::vector<ForwardTrace<float>> traces(n);
    std::vector<Tensor3<float>> preds(n), targets(n);
    const Network<float>& cnet = net;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        preds[i] = cnet.forward(batch[i]->lr, traces[i]);
        targets[i] = batch[i]->hr;
    }
    const MseResult<float> mse = mse_loss<float>(preds, targets);
    if (!std::isfinite(mse.loss))
        return mse.loss;

    std::vector<std::vector<ParamSet<float>>> grads(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        grads[i] = cnet.make_grad_buffers();
        cnet.backward(traces[i], mse.grad[i], grads[i]);
    }
    // Summed in double so the result barely depends on sample order.
    std::vector<std::vector<double>> acc;
    for (const auto& g : grads[0])
        for (const auto* field : {&g.weights, &g.biases, &g.slopes})
            acc.emplace_back(field->size(), 0.0);
    for (int i = 0; i < n; ++i) {
        std::size_t f = 0;
        for (const auto& g : grads[i])
            for (const auto* field : {&g.weights, &g.biases, &g.slopes}) {
                auto& a = acc[f++];
                for (std::size_t j = 0; j < a.size(); ++j)
                    a[j] += (*field)[j];
            }
    }
    std::size_t f = 0;
    for (auto& layer : net.layers)
        for (auto* field : {&layer.params.grad.weights, &layer.params.grad.biases, &layer.params.grad.slopes}) {
            const auto& a = acc[f++];
            for (std::size_t j = 0; j < a.size(); ++j)
                (*field)[j] += static_cast<float>(a[j]);
        }
    return mse.loss;
}

double evaluate_loss(const Network<float>& net, std::span<const PatchPair> pairs)
{
    const int n = static_cast<int>(pairs.size());
    if (n == 0)
        return 0.0;
    std::vector<double> per(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const Tensor3<float> p = net.forward(pairs[i].lr);
        double s = 0.0;
        auto pv = p.values();
        auto tv = pairs[i].hr.values();
        for (std::size_t j = 0; j < pv.size(); ++j) {
            const double d = static_cast<double>(pv[j]) - tv[j];
            s += d * d;
        }
        per[i] = s;
    }
    return std::accumulate(per.begin(), per.end(), 0.0) / n;
}

std::optional<SlopeSummary> slope_summary(const SrModel& model)
{
    SlopeSummary s{INFINITY, 0.0, -INFINITY};
    std::size_t count = 0;
    for (const auto& l : model.net.layers)
        for (float a : l.params.value.slopes) {
            s.min = std::min<double>(s.min, a);
            s.max = std::max<double>(s.max, a);
            s.mean += a;
            ++count;
        }
    if (count == 0)
        return std::nullopt;
    s.mean /= static_cast<double>(count);
    return s;
}

std::string to_json_line(const EpochRecord& r)
{
    nlohmann::json j;
    j["epoch"] = r.epoch;
    j["train_loss"] = r.train_loss;
    j["val_loss"] = r.val_loss ? nlohmann::json(*r.val_loss) : nlohmann::json(nullptr);
    j["seconds"] = r.seconds;
    if (r.slopes)
        j["prelu_slopes"] = {{"min", r.slopes->min}, {"mean", r.slopes->mean}, {"max", r.slopes->max}};
    return j.dump();
}

std::string config_json_line(const TrainConfig& cfg)
{
    nlohmann::json c;
    c["epochs"] = cfg.epochs;
    c["learning_rate"] = cfg.learning_rate;
    c["batch_size"] = cfg.batch_size;
    c["momentum"] = cfg.momentum;
    c["rng_seed"] = cfg.rng_seed;
    c["activation"] = to_string(cfg.activation);
    c["checkpoint_every"] = cfg.checkpoint_every;
    c["validation_fraction"] = cfg.validation_fraction;
    return nlohmann::json{{"config", c}}.dump();
}

std::filesystem::path checkpoint(const SrModel& model, const TrainLog& log, const std::filesystem::path& dir,
                                 int epoch)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    char name[32];
    std::snprintf(name, sizeof name, "model_epoch_%04d.dsr", epoch);
    const auto path = dir / name;
    save_model(model, path);

    std::ofstream f(dir / "checkpoints.jsonl", std::ios::app);
    if (!f)
        throw IoError("cannot append to " + (dir / "checkpoints.jsonl").string());
    for (const auto& r : log.epochs)
        if (r.epoch == epoch)
            f << to_json_line(r) << '\n';
    return path;
}

namespace {

// Keeps the OpenMP thread count for the duration of a call.
class ThreadScope {
public:
    explicit ThreadScope(int n) : saved_(parallel::max_threads())
    {
        if (n > 0)
            parallel::set_threads(n);
    }
    ~ThreadScope() { parallel::set_threads(saved_); }
    ThreadScope(const ThreadScope&) = delete;
    ThreadScope& operator=(const ThreadScope&) = delete;

private:
    int saved_;
};

// Stream id for the one-off validation split shuffle, distinct from epochs.
constexpr std::uint64_t kSplitStream = ~std::uint64_t{0};

} // namespace

TrainLog train(SrModel& model, std::span<const PatchPair> pairs, const TrainConfig& cfg,
               const std::function<void(const EpochRecord&)>& on_epoch)
{
    cfg.validate();
    if (pairs.empty())
        throw EmptyDataset("training set is empty");
    if (cfg.activation != model.activation)
        throw std::invalid_argument("train config activation does not match the model");
    validate_architecture(model);
    ThreadScope threads(cfg.threads);

    // Validation split.
    std::vector<const PatchPair*> train_set;
    std::vector<PatchPair> val_set;
    {
        const auto order = shuffle_indices(pairs.size(), kSplitStream, cfg.rng_seed);
        auto n_val = static_cast<std::size_t>(std::floor(cfg.validation_fraction * static_cast<double>(pairs.size())));
        n_val = std::min(n_val, pairs.size() - 1);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i < n_val)
                val_set.push_back(pairs[order[i]]);
            else
                train_set.push_back(&pairs[order[i]]);
        }
    }

    std::ofstream log_file;
    if (cfg.log_path) {
        log_file.open(*cfg.log_path, std::ios::trunc);
        if (!log_file)
            throw IoError("cannot open training log " + cfg.log_path->string());
        log_file << config_json_line(cfg) << '\n';
    }

    const auto lr = static_cast<float>(cfg.learning_rate);
    const auto mu = static_cast<float>(cfg.momentum);
    const std::size_t n = train_set.size();
    const auto bs = static_cast<std::size_t>(cfg.batch_size);
    model.net.zero_grad();

    TrainLog log;
    std::vector<const PatchPair*> batch;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto order = shuffle_indices(n, static_cast<std::uint64_t>(epoch - 1), cfg.rng_seed);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < n; start += bs) {
            const std::size_t end = std::min(n, start + bs);
            batch.clear();
            for (std::size_t i = start; i < end; ++i)
                batch.push_back(train_set[order[i]]);
            const double loss = accumulate_batch_gradient(model.net, batch);
            if (!std::isfinite(loss))
                throw NonFiniteLoss("non-finite training loss in epoch " + std::to_string(epoch));
            loss_sum += loss * static_cast<double>(batch.size());
            for (auto& layer : model.net.layers)
                sgd_momentum_step(layer.params, lr, mu);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(n);
        if (!val_set.empty()) {
            rec.val_loss = evaluate_loss(model.net, val_set);
            if (!std::isfinite(*rec.val_loss))
                throw NonFiniteLoss("non-finite validation loss in epoch " + std::to_string(epoch));
        }
        rec.slopes = slope_summary(model);
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log.epochs.push_back(rec);

        if (log_file.is_open())
            log_file << to_json_line(rec) << std::endl;
        if (on_epoch)
            on_epoch(rec);
        if (cfg.checkpoint_dir &&
            ((cfg.checkpoint_every > 0 && epoch % cfg.checkpoint_every == 0) || epoch == cfg.epochs))
            checkpoint(model, log, *cfg.checkpoint_dir, epoch);
    }
    return log;
}

} // namespace docsr
