// SPDX-License-Identifier: Apache-2.0
//
// dpirs: dual-polarized IRS-assisted massive MIMO-NOMA link simulator
// Copyright (C) 2026 The dpirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DPIRS_VALIDATE_HPP
#define DPIRS_VALIDATE_HPP

#include "dpirs/config.hpp"

#include <string>
#include <vector>

namespace dpirs {

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast invariant suite over a configuration: covariance structure, precoder
/// nulling, solver certificates, analytics self-consistency.
std::vector<CheckResult> run_invariant_suite(const SimConfig &cfg, std::uint64_t seed = 7);

} // namespace dpirs

#endif
