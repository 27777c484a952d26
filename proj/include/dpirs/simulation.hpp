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

#ifndef DPIRS_SIMULATION_HPP
#define DPIRS_SIMULATION_HPP

#include "dpirs/analytics.hpp"
#include "dpirs/config.hpp"
#include "dpirs/precoding.hpp"
#include "dpirs/receiver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dpirs {

/// Everything derived once per configuration and shared read-only by all trials.
struct System
{
    SimConfig config;
    std::vector<CovarianceDecomposition<double>> dual;   // per cluster, M/2 x M/2
    OuterPrecoder<double> outer;                         // simulated cluster
    std::vector<CovarianceDecomposition<double>> single; // per cluster, M x M (baselines only)
    MatrixXcd single_outer;                              // M x Mbar
    std::vector<double> zeta_bs_u;                       // per user
    double zeta_irs_u = 0;
    SubsetAssignment subsets;
    std::vector<int> ladder;      // all users, ascending gain
    double projected_power = 0;   // [P^H R P]_gg of the simulated group

    const CovarianceDecomposition<double> &serving_cluster() const { return dual[config.cluster]; }
};

/// Builds covariances and precoders and checks every dimension constraint.
/// Throws ConstraintError naming the violated constraint.
System prepare_system(const SimConfig &cfg);

/// One grid cell of the Monte Carlo engine.
struct TrialPoint
{
    int rx_antennas = 4; // N
    int elements = 100;  // L
    double chi = 0.5;
};

/// Per-user quantities of one trial that do not depend on SNR or xi.
struct UserSample
{
    double gain = 0;          // effective gain after detection
    double X = 0;             // residual polarization interference
    bool degenerate = false;
    bool solver_converged = true;
    double max_reflection = 0;
};

UserSample irs_user_sample(const System &sys, const TrialPoint &pt, std::uint64_t trial, int user);
std::vector<UserSample> irs_group_samples(const System &sys, const TrialPoint &pt, std::uint64_t trial);

/// Per-user rates of the IRS scheme for one trial.
std::vector<double> group_trial(const System &sys, const TrialPoint &pt, std::uint64_t trial, double snr_db,
                                double xi);

/// Effective gains of the no-IRS reference channels for one trial.
double single_pol_gain(const System &sys, int rx_antennas, std::uint64_t trial, int user);
double dual_pol_gain(const System &sys, int rx_antennas, double chi, std::uint64_t trial, int user);

/// Per-user rates of a baseline scheme for one trial.
std::vector<double> baseline_rates(const System &sys, Scheme scheme, int rx_antennas, double chi,
                                   std::uint64_t trial, double snr_db, double xi);

/// Rate of `user` under `scheme` given its trial sample.
double user_rate(const System &sys, Scheme scheme, int user, const UserSample &s, double rho, double xi);

struct RateRecord
{
    std::string scheme;
    double snr_db = 0;
    int elements = 0; // L, zero for schemes without an IRS
    double xi = 0;
    double chi = 0;
    int rx_antennas = 0;
    std::vector<int> users;         // one-based
    std::vector<double> user_rates; // BPCU
    double sum_rate = 0;
    double ci95 = 0;
    int trials = 0;
    int degenerate = 0;
};

/// Worker count from DPIRS_WORKERS, else hardware concurrency.
int default_workers();

/// Monte Carlo sweep over every (scheme, N, chi, L, xi, SNR) point of the config.
/// Results do not depend on the worker count.
std::vector<RateRecord> run_sweep(const SimConfig &cfg, int workers = 0);

/// Closed-form large-L rates over the (N, chi, xi, SNR) grid.
std::vector<RateRecord> analytic_records(const SimConfig &cfg);

/// Closed-form rate of one user at one grid point.
double analytic_user_rate(const System &sys, int user, int rx_antennas, double chi, double xi, double snr_db);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace dpirs

#endif
