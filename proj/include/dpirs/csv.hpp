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

#ifndef DPIRS_CSV_HPP
#define DPIRS_CSV_HPP

#include "dpirs/simulation.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dpirs {

/// Column order of every emitted file. Per-user fields are ';'-joined lists.
inline constexpr const char *kCsvHeader =
    "scheme,snr_db,L,xi,chi,N,user,rate_bpcu,sum_rate_bpcu,ci95,trials,degenerate";

std::string format_csv(const std::vector<RateRecord> &records);
void emit_csv(const std::vector<RateRecord> &records, const std::filesystem::path &path);
std::vector<RateRecord> parse_csv(const std::string &text);

} // namespace dpirs

#endif
