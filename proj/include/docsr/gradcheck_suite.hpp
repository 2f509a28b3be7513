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

#include "docsr/gradcheck.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace docsr {

struct GradCheckCase {
    std::string name;
    std::vector<GradCheckReport> reports;

    bool pass() const;
    double max_relative_error() const;
};

/// Finite-difference check of every layer flavour used by the super-resolution
/// net (5x5 / 1x1 / 3x3 conv, ReLU, PReLU with slope gradients, a strided and
/// padded conv) plus the full 5-layer net with each activation, on seeded
/// random parameters and data. 64-bit throughout.
std::vector<GradCheckCase> run_grad_check_suite(std::uint64_t seed, const GradCheckOptions& opts = {});

} // namespace docsr
