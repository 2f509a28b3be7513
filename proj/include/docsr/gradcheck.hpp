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

#include "docsr/network.hpp"

#include <span>
#include <string>
#include <vector>

namespace docsr {

struct GradCheckReport {
    std::string parameter_name; // e.g. "layer3.weights", "input"
    std::size_t entries = 0;
    double max_relative_error = 0.0;
    bool pass = false;
};

struct GradCheckOptions {
    double epsilon = 1e-3;
    double tolerance = 1e-4;
    bool check_input = true;
    // Times epsilon is divided by 10 when a probe flips a rectifier's sign.
    int max_refinements = 4;
};

/// Compares the analytic gradient of the batch MSE loss against central
/// differences (L(p+e) - L(p-e)) / 2e for every parameter entry (and every
/// input entry when requested). Relative error per entry is
/// |ga - gn| / max(|ga|, |gn|, 1e-8); each report carries the maximum over a
/// buffer. Runs on the 64-bit path. Throws NonFiniteLoss on NaN/Inf loss.
std::vector<GradCheckReport> grad_check(const Network<double>& net, std::span<const Tensor3<double>> inputs,
                                        std::span<const Tensor3<double>> targets, const GradCheckOptions& opts = {});

double relative_error(double analytic, double numeric);

} // namespace docsr
