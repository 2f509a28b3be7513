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

// Optimized (OpenMP) kernels vs. the naive serial reference, per layer of the
// super-resolution net, plus one full training step.

#include "docsr/init.hpp"
#include "docsr/reference.hpp"
#include "docsr/srnet.hpp"
#include "docsr/trainer.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace docsr;

struct LayerCase {
    ConvSpec spec;
    Shape3 input;
};

LayerCase layer_case(int i)
{
    static const Shape3 inputs[] = {{16, 16, 1}, {12, 12, 64}, {12, 12, 44}, {12, 12, 24}, {12, 12, 14}};
    return {sr_layer_specs(Activation::ReLU)[i], inputs[i]};
}

Tensor3<float> random_input(Shape3 s, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<float> u(-1.f, 1.f);
    Tensor3<float> t(s);
    for (float& v : t.values())
        v = u(rng);
    return t;
}

void BM_ConvForward(benchmark::State& state)
{
    const auto c = layer_case(static_cast<int>(state.range(0)));
    const auto p = he_init<float>(c.spec, 1);
    const auto x = random_input(c.input, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(conv_forward(x, p, c.spec));
}

void BM_ConvForwardReference(benchmark::State& state)
{
    const auto c = layer_case(static_cast<int>(state.range(0)));
    const auto p = he_init<float>(c.spec, 1);
    const auto x = random_input(c.input, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::conv_forward(x, p, c.spec));
}

void BM_ConvBackward(benchmark::State& state)
{
    const auto c = layer_case(static_cast<int>(state.range(0)));
    auto p = he_init<float>(c.spec, 1);
    const auto x = random_input(c.input, 2);
    const auto g = random_input(conv_output_shape(c.input.height, c.input.width, c.spec), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(conv_backward(x, g, p, c.spec));
}

void BM_ConvBackwardReference(benchmark::State& state)
{
    const auto c = layer_case(static_cast<int>(state.range(0)));
    auto p = he_init<float>(c.spec, 1);
    const auto x = random_input(c.input, 2);
    const auto g = random_input(conv_output_shape(c.input.height, c.input.width, c.spec), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::conv_backward(x, g, p, c.spec, p.grad));
}

void BM_TrainBatch(benchmark::State& state)
{
    SrModel m = build_model(Activation::PReLU, 1);
    std::vector<PatchPair> pairs;
    for (unsigned i = 0; i < 32; ++i)
        pairs.push_back({random_input({16, 16, 1}, i), random_input({10, 10, 1}, 100 + i), {}});
    std::vector<const PatchPair*> batch;
    for (const auto& p : pairs)
        batch.push_back(&p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(accumulate_batch_gradient(m.net, batch));
        m.net.zero_grad();
    }
    state.SetItemsProcessed(state.iterations() * 32);
}

} // namespace

BENCHMARK(BM_ConvForward)->DenseRange(0, 4);
BENCHMARK(BM_ConvForwardReference)->DenseRange(0, 4);
BENCHMARK(BM_ConvBackward)->DenseRange(0, 4);
BENCHMARK(BM_ConvBackwardReference)->DenseRange(0, 4);
BENCHMARK(BM_TrainBatch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
