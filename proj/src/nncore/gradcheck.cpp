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

#include "docsr/gradcheck.hpp"

#include "docsr/error.hpp"
#include "docsr/loss.hpp"

#include <algorithm>
#include <cmath>

namespace docsr {

namespace {

struct Probe {
    double loss;
    std::vector<std::uint8_t> pattern;
};

Probe evaluate(const Network<double>& net, std::span<const Tensor3<double>> inputs,
               std::span<const Tensor3<double>> targets)
{
    std::vector<Tensor3<double>> preds;
    preds.reserve(inputs.size());
    Probe p{};
    for (const auto& in : inputs) {
        ForwardTrace<double> trace;
        preds.push_back(net.forward(in, trace));
        auto bits = activation_pattern(net, trace);
        p.pattern.insert(p.pattern.end(), bits.begin(), bits.end());
    }
    p.loss = mse_loss<double>(preds, targets).loss;
    if (!std::isfinite(p.loss))
        throw NonFiniteLoss("grad_check: loss evaluated to a non-finite value");
    return p;
}

// Central difference of `loss_at` around *slot, shrinking the step while either
// probe lands on a different side of a rectifier kink than the base point.
template <typename LossAt>
double central_difference(double* slot, const std::vector<std::uint8_t>& base_pattern, const GradCheckOptions& opts,
                          LossAt&& loss_at)
{
    const double saved = *slot;
    double eps = opts.epsilon;
    double estimate = 0.0;
    for (int attempt = 0; attempt <= opts.max_refinements; ++attempt, eps /= 10.0) {
        *slot = saved + eps;
        const Probe plus = loss_at();
        *slot = saved - eps;
        const Probe minus = loss_at();
        *slot = saved;
        estimate = (plus.loss - minus.loss) / (2.0 * eps);
        if (plus.pattern == base_pattern && minus.pattern == base_pattern)
            break;
    }
    return estimate;
}

} // namespace

double relative_error(double analytic, double numeric)
{
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    return std::abs(analytic - numeric) / denom;
}

std::vector<GradCheckReport> grad_check(const Network<double>& net, std::span<const Tensor3<double>> inputs,
                                        std::span<const Tensor3<double>> targets, const GradCheckOptions& opts)
{
    if (inputs.size() != targets.size() || inputs.empty())
        throw ShapeMismatch("grad_check: need matching, nonempty input/target batches");

    // Analytic gradients.
    std::vector<ForwardTrace<double>> traces(inputs.size());
    std::vector<Tensor3<double>> preds;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        preds.push_back(net.forward(inputs[i], traces[i]));
    const auto mse = mse_loss<double>(preds, targets);
    if (!std::isfinite(mse.loss))
        throw NonFiniteLoss("grad_check: loss evaluated to a non-finite value");
    auto grads = net.make_grad_buffers();
    std::vector<Tensor3<double>> input_grads;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        input_grads.push_back(net.backward(traces[i], mse.grad[i], grads, true));

    Network<double> work = net;
    const std::vector<std::uint8_t> base_pattern = evaluate(work, inputs, targets).pattern;
    auto loss_at = [&] { return evaluate(work, inputs, targets); };

    std::vector<GradCheckReport> reports;
    auto check_buffer = [&](const std::string& name, std::vector<double>& values, const std::vector<double>& analytic) {
        if (values.empty())
            return;
        GradCheckReport r{name, values.size(), 0.0, false};
        for (std::size_t j = 0; j < values.size(); ++j) {
            const double numeric = central_difference(&values[j], base_pattern, opts, loss_at);
            r.max_relative_error = std::max(r.max_relative_error, relative_error(analytic[j], numeric));
        }
        r.pass = r.max_relative_error <= opts.tolerance;
        reports.push_back(std::move(r));
    };

    for (std::size_t l = 0; l < work.layers.size(); ++l) {
        const std::string prefix = "layer" + std::to_string(l + 1) + ".";
        auto& v = work.layers[l].params.value;
        check_buffer(prefix + "weights", v.weights, grads[l].weights);
        check_buffer(prefix + "biases", v.biases, grads[l].biases);
        check_buffer(prefix + "slopes", v.slopes, grads[l].slopes);
    }

    if (opts.check_input) {
        std::vector<Tensor3<double>> probe_inputs(inputs.begin(), inputs.end());
        auto input_loss_at = [&] { return evaluate(work, probe_inputs, targets); };
        GradCheckReport r{"input", 0, 0.0, false};
        for (std::size_t s = 0; s < probe_inputs.size(); ++s) {
            auto vals = probe_inputs[s].values();
            auto analytic = input_grads[s].values();
            for (std::size_t j = 0; j < vals.size(); ++j) {
                const double numeric = central_difference(&vals[j], base_pattern, opts, input_loss_at);
                r.max_relative_error = std::max(r.max_relative_error, relative_error(analytic[j], numeric));
            }
            r.entries += vals.size();
        }
        r.pass = r.max_relative_error <= opts.tolerance;
        reports.push_back(std::move(r));
    }
    return reports;
}

} // namespace docsr
