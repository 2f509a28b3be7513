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

#include "docsr/gradcheck_suite.hpp"

#include "docsr/init.hpp"
#include "docsr/random.hpp"
#include "docsr/srnet.hpp"

#include <algorithm>
#include <random>

namespace docsr {

bool GradCheckCase::pass() const
{
    return !reports.empty() && std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

double GradCheckCase::max_relative_error() const
{
    double m = 0.0;
    for (const auto& r : reports)
        m = std::max(m, r.max_relative_error);
    return m;
}

namespace {

// He weights plus random biases and slopes, so no gradient is trivially zero.
Network<double> random_network(const std::vector<ConvSpec>& specs, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> bias(-0.1, 0.1), slope(0.05, 0.95);
    Network<double> net;
    for (const auto& s : specs) {
        auto p = he_init<double>(s, rng());
        for (double& b : p.value.biases)
            b = bias(rng);
        for (double& a : p.value.slopes)
            a = slope(rng);
        net.layers.push_back({s, std::move(p)});
    }
    return net;
}

Tensor3<double> random_tensor(Shape3 shape, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Tensor3<double> t(shape);
    for (double& v : t.values())
        v = u(rng);
    return t;
}

GradCheckCase run_case(const std::string& name, const std::vector<ConvSpec>& specs, Shape3 input, int batch,
                       std::uint64_t seed, const GradCheckOptions& opts)
{
    std::mt19937_64 rng(seed);
    const Network<double> net = random_network(specs, rng);
    const Shape3 out = net.output_shape(input);
    std::vector<Tensor3<double>> xs, ys;
    for (int i = 0; i < batch; ++i) {
        xs.push_back(random_tensor(input, rng));
        ys.push_back(random_tensor(out, rng));
    }
    return {name, grad_check(net, xs, ys, opts)};
}

} // namespace

std::vector<GradCheckCase> run_grad_check_suite(std::uint64_t seed, const GradCheckOptions& opts)
{
    using A = Activation;
    std::vector<GradCheckCase> cases;
    cases.push_back(run_case("conv5x5+prelu", {{2, 3, 5, 1, 0, A::PReLU}}, {8, 8, 2}, 2, mix_seed(seed, 1), opts));
    cases.push_back(run_case("conv1x1+relu", {{4, 5, 1, 1, 0, A::ReLU}}, {6, 6, 4}, 2, mix_seed(seed, 2), opts));
    cases.push_back(run_case("conv3x3", {{3, 1, 3, 1, 0, A::None}}, {7, 7, 3}, 2, mix_seed(seed, 3), opts));
    cases.push_back(
        run_case("conv3x3+relu/stride2/pad1", {{2, 4, 3, 2, 1, A::ReLU}}, {7, 7, 2}, 2, mix_seed(seed, 4), opts));
    for (A act : {A::ReLU, A::PReLU}) {
        const auto specs = sr_layer_specs(act);
        cases.push_back(run_case(std::string("sr-net+") + to_string(act), {specs.begin(), specs.end()}, {16, 16, 1},
                                 1, mix_seed(seed, act == A::ReLU ? 5 : 6), opts));
    }
    return cases;
}

} // namespace docsr
