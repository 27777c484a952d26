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

#ifndef DPIRS_CONFIG_HPP
#define DPIRS_CONFIG_HPP

#include "dpirs/covariance.hpp"
#include "dpirs/irs_optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dpirs {

enum class Scheme
{
    irs_noma,        // dual-polarized IRS-assisted NOMA (the proposed scheme)
    oma,             // single-polarized TDMA
    noma_single_pol, // single-polarized NOMA, no IRS
    noma_dual_pol,   // dual-polarized NOMA, no IRS
    analytic,        // large-L closed form
};

const char *to_string(Scheme s);
Scheme scheme_from_string(const std::string &name);

struct SimConfig
{
    std::string name = "custom";

    int antennas = 90;            // M
    std::vector<int> rx_antennas{4}; // N grid
    int groups = 2;               // G
    int streams = 0;              // Mbar; 0 selects 2G
    int group = 0;                // simulated group, zero-based
    int cluster = 0;              // simulated cluster, zero-based

    std::vector<ClusterGeometry> clusters;
    double spacing = 0.5;
    double energy_fraction = 0.999;

    std::vector<double> user_distances; // BS to user (and to its IRS), meters
    double irs_distance = 20;           // IRS to user, meters
    double array_gain = 2e4;
    double path_loss_exponent = 2;

    std::vector<double> alpha_sq; // normalized at load

    std::vector<double> chi{0.5};     // BS-U leakage grid
    std::optional<double> chi_bs_irs; // defaults to the BS-U value
    std::vector<double> xi{0};
    std::vector<double> snr_db{0, 10, 20, 30};
    std::vector<int> elements{100}; // L grid

    int trials = 1000;
    std::map<int, int> trials_by_elements; // L -> trials override
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes{Scheme::irs_noma};

    SolverOptions solver;

    int users() const { return static_cast<int>(user_distances.size()); }
    int trials_for(int L) const;
};

/// Parses a JSON document (see README for the schema). Unknown keys are rejected.
SimConfig parse_config(const std::string &json_text);
SimConfig load_config(const std::filesystem::path &path);
std::string dump_config(const SimConfig &cfg);

/// Scalar and shape checks that need no linear algebra.
void validate_basic(const SimConfig &cfg);

} // namespace dpirs

#endif
