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

#include "dpirs/simulation.hpp"

#include "dpirs/channel.hpp"
#include "dpirs/irs_optimizer.hpp"
#include "dpirs/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace dpirs {

namespace {

bool needs_single_pol(const SimConfig &c)
{
    return std::any_of(c.schemes.begin(), c.schemes.end(),
                       [](Scheme s) { return s == Scheme::oma || s == Scheme::noma_single_pol; });
}

/// Symbols the other polarization carries: slot g' holds the superposition of
/// that subset's users in group g' (groups beyond G are idle).
VectorXcd interfering_symbols(const System &sys, Polarization t, std::uint64_t trial, int user)
{
    const auto &cfg = sys.config;
    const auto &subset = sys.subsets.of(t);
    const int half = cfg.streams / 2;
    VectorXcd x = VectorXcd::Zero(half);
    if (subset.empty())
        return x;
    Rng rng = substream(cfg.seed, trial, user, Stream::symbols);
    const MatrixXcd s = complex_gaussian<double>(half, static_cast<Eigen::Index>(subset.size()), rng);
    for (int g = 0; g < cfg.groups; ++g)
        for (std::size_t m = 0; m < subset.size(); ++m)
            x(g) += std::sqrt(cfg.alpha_sq[subset[m]]) * s(g, static_cast<Eigen::Index>(m));
    return x;
}

template <typename F>
void parallel_for(std::size_t count, int workers, F &&body)
{
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace

System prepare_system(const SimConfig &cfg)
{
    validate_basic(cfg);
    System sys;
    sys.config = cfg;

    const ArrayGeometry dual_array{cfg.antennas / 2, cfg.spacing};
    for (const auto &cl : cfg.clusters)
        sys.dual.push_back(eigendecompose(one_ring_covariance(dual_array, cl), cfg.energy_fraction));
    sys.outer = build_outer_precoder(sys.dual, static_cast<std::size_t>(cfg.cluster), cfg.streams);

    const MatrixXcd projected = sys.outer.P.adjoint() * sys.serving_cluster().truncated() * sys.outer.P;
    sys.projected_power = projected(cfg.group, cfg.group).real();

    if (needs_single_pol(cfg))
    {
        const ArrayGeometry single_array{cfg.antennas, cfg.spacing};
        for (const auto &cl : cfg.clusters)
            sys.single.push_back(eigendecompose(one_ring_covariance(single_array, cl), cfg.energy_fraction));
        sys.single_outer = dominant_null_space_modes(sys.single, static_cast<std::size_t>(cfg.cluster), cfg.streams);
    }

    for (double d : cfg.user_distances)
        sys.zeta_bs_u.push_back(path_loss(cfg.array_gain, d, cfg.path_loss_exponent));
    sys.zeta_irs_u = path_loss(1.0, cfg.irs_distance, cfg.path_loss_exponent);
    sys.subsets = assign_subsets(sys.zeta_bs_u);
    sys.ladder.resize(sys.zeta_bs_u.size());
    std::iota(sys.ladder.begin(), sys.ladder.end(), 0);
    std::stable_sort(sys.ladder.begin(), sys.ladder.end(),
                     [&](int a, int b) { return sys.zeta_bs_u[a] < sys.zeta_bs_u[b]; });
    return sys;
}

UserSample irs_user_sample(const System &sys, const TrialPoint &pt, std::uint64_t trial, int user)
{
    const auto &cfg = sys.config;
    const auto &decomp = sys.serving_cluster();
    const ChannelDims dims{decomp.rank(), pt.rx_antennas, pt.elements};
    LinkGains gains;
    gains.zeta_bs_u = sys.zeta_bs_u.at(user);
    gains.zeta_bs_irs = sys.zeta_bs_u.at(user);
    gains.zeta_irs_u = sys.zeta_irs_u;
    gains.chi_bs_u = pt.chi;
    gains.chi_bs_irs = cfg.chi_bs_irs.value_or(pt.chi);

    Rng rng_bu = substream(cfg.seed, trial, user, Stream::bs_user);
    Rng rng_bi = substream(cfg.seed, trial, user, Stream::bs_irs);
    Rng rng_iu = substream(cfg.seed, trial, user, Stream::irs_user);
    const auto real = draw_realization<double>(dims, gains, rng_bu, rng_bi, rng_iu);

    const Polarization serving = sys.subsets.polarization_of(user);
    const auto [p_v, p_h] = vectorize(real, serving);
    const auto s_v = solve_constrained_ls(p_v, cfg.solver);
    const auto s_h = solve_constrained_ls(p_h, cfg.solver);
    auto refl = ReflectionConfig<double>::zeros(pt.elements);
    store_solution(refl, Polarization::vertical, s_v.theta);
    store_solution(refl, Polarization::horizontal, s_h.theta);

    const auto blocks = virtual_channel(compose_channel(real, refl, decomp), sys.outer.P);
    const auto eff = build_detector(blocks, serving);
    const auto report =
        gains_and_interference(eff, interfering_symbols(sys, other(serving), trial, user), cfg.group);

    UserSample out;
    out.gain = report.best;
    out.X = report.X;
    out.degenerate = report.degenerate;
    out.solver_converged = s_v.converged && s_h.converged;
    out.max_reflection = std::max(s_v.max_magnitude, s_h.max_magnitude);
    return out;
}

std::vector<UserSample> irs_group_samples(const System &sys, const TrialPoint &pt, std::uint64_t trial)
{
    std::vector<UserSample> out;
    for (int u = 0; u < sys.config.users(); ++u)
        out.push_back(irs_user_sample(sys, pt, trial, u));
    return out;
}

double single_pol_gain(const System &sys, int rx_antennas, std::uint64_t trial, int user)
{
    if (sys.single.empty())
        throw std::logic_error("single_pol_gain: system prepared without single-polarized baselines");
    const auto &cfg = sys.config;
    const auto &decomp = sys.single[cfg.cluster];
    Rng rng = substream(cfg.seed, trial, user, Stream::single_pol);
    const MatrixXcd D = std::sqrt(sys.zeta_bs_u.at(user)) * complex_gaussian<double>(decomp.rank(), rx_antennas, rng);
    const MatrixXcd H = D.adjoint() * decomp.whitening() * sys.single_outer; // N x Mbar
    const auto det = pseudoinverse<double>(H);
    return det.degenerate ? 0.0 : detector_gain(det.matrix, cfg.group);
}

double dual_pol_gain(const System &sys, int rx_antennas, double chi, std::uint64_t trial, int user)
{
    using P = Polarization;
    const auto &cfg = sys.config;
    const auto &decomp = sys.serving_cluster();
    Rng rng = substream(cfg.seed, trial, user, Stream::bs_user);
    const auto D = draw_direct<double>(decomp.rank(), rx_antennas / 2, sys.zeta_bs_u.at(user), chi, rng);
    const MatrixXcd WP = decomp.whitening() * sys.outer.P;
    double best = 0;
    for (P rx : {P::vertical, P::horizontal})
    {
        // The same superposition leaves both transmit polarizations at half power.
        const MatrixXcd H = (D(P::vertical, rx).adjoint() * WP + D(P::horizontal, rx).adjoint() * WP) / std::sqrt(2.0);
        const auto det = pseudoinverse<double>(H);
        if (!det.degenerate)
            best = std::max(best, detector_gain(det.matrix, cfg.group));
    }
    return best;
}

double user_rate(const System &sys, Scheme scheme, int user, const UserSample &s, double rho, double xi)
{
    const auto &alpha = sys.config.alpha_sq;
    switch (scheme)
    {
    case Scheme::irs_noma: {
        const auto &subset = sys.subsets.of(sys.subsets.polarization_of(user));
        return std::log2(1 + sic_sinr(s.gain, s.X, alpha, subset, user, user, xi, rho));
    }
    case Scheme::oma:
        return std::log2(1 + rho * s.gain) / sys.config.users();
    case Scheme::noma_single_pol:
    case Scheme::noma_dual_pol:
        return std::log2(1 + sic_sinr(s.gain, 0.0, alpha, sys.ladder, user, user, xi, rho));
    case Scheme::analytic:
        break;
    }
    throw std::invalid_argument("user_rate: scheme has no per-trial rate");
}

std::vector<double> group_trial(const System &sys, const TrialPoint &pt, std::uint64_t trial, double snr_db,
                                double xi)
{
    const double rho = db_to_linear(snr_db);
    std::vector<double> rates;
    const auto samples = irs_group_samples(sys, pt, trial);
    for (int u = 0; u < sys.config.users(); ++u)
        rates.push_back(user_rate(sys, Scheme::irs_noma, u, samples[u], rho, xi));
    return rates;
}

namespace {

std::vector<UserSample> baseline_samples(const System &sys, Scheme scheme, int rx_antennas, double chi,
                                         std::uint64_t trial)
{
    std::vector<UserSample> out(sys.config.users());
    for (int u = 0; u < sys.config.users(); ++u)
    {
        const double g = scheme == Scheme::noma_dual_pol ? dual_pol_gain(sys, rx_antennas, chi, trial, u)
                                                         : single_pol_gain(sys, rx_antennas, trial, u);
        out[u].gain = g;
        out[u].degenerate = !(g > 0);
    }
    return out;
}

} // namespace

std::vector<double> baseline_rates(const System &sys, Scheme scheme, int rx_antennas, double chi,
                                   std::uint64_t trial, double snr_db, double xi)
{
    if (scheme == Scheme::irs_noma || scheme == Scheme::analytic)
        throw std::invalid_argument("baseline_rates: not a baseline scheme");
    const double rho = db_to_linear(snr_db);
    const auto samples = baseline_samples(sys, scheme, rx_antennas, chi, trial);
    std::vector<double> rates;
    for (int u = 0; u < sys.config.users(); ++u)
        rates.push_back(user_rate(sys, scheme, u, samples[u], rho, xi));
    return rates;
}

int default_workers()
{
    if (const char *env = std::getenv("DPIRS_WORKERS"))
    {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RateRecord> run_sweep(const SimConfig &cfg, int workers)
{
    const System sys = prepare_system(cfg);
    if (workers <= 0)
        workers = default_workers();

    std::vector<RateRecord> records;
    const int U = cfg.users();
    for (Scheme scheme : cfg.schemes)
    {
        if (scheme == Scheme::analytic)
        {
            auto a = analytic_records(cfg);
            records.insert(records.end(), a.begin(), a.end());
            continue;
        }
        const bool irs = scheme == Scheme::irs_noma;
        const std::vector<int> L_grid = irs ? cfg.elements : std::vector<int>{0};
        for (int N : cfg.rx_antennas)
            for (double chi : cfg.chi)
                for (int L : L_grid)
                {
                    const int T = irs ? cfg.trials_for(L) : cfg.trials;
                    std::vector<std::vector<UserSample>> samples(T);
                    parallel_for(static_cast<std::size_t>(T), workers, [&](std::size_t t) {
                        samples[t] = irs ? irs_group_samples(sys, TrialPoint{N, L, chi}, t)
                                         : baseline_samples(sys, scheme, N, chi, t);
                    });

                    int degenerate = 0;
                    for (const auto &trial : samples)
                        degenerate += std::any_of(trial.begin(), trial.end(),
                                                  [](const UserSample &s) { return s.degenerate; });

                    for (double xi : cfg.xi)
                        for (double snr : cfg.snr_db)
                        {
                            const double rho = db_to_linear(snr);
                            RateRecord r;
                            r.scheme = to_string(scheme);
                            r.snr_db = snr;
                            r.elements = L;
                            r.xi = xi;
                            r.chi = chi;
                            r.rx_antennas = N;
                            r.trials = T;
                            r.degenerate = degenerate;
                            r.user_rates.assign(U, 0.0);
                            double sum = 0, sum_sq = 0;
                            for (const auto &trial : samples)
                            {
                                double total = 0;
                                for (int u = 0; u < U; ++u)
                                {
                                    const double rate = user_rate(sys, scheme, u, trial[u], rho, xi);
                                    r.user_rates[u] += rate;
                                    total += rate;
                                }
                                sum += total;
                                sum_sq += total * total;
                            }
                            for (int u = 0; u < U; ++u)
                            {
                                r.users.push_back(u + 1);
                                r.user_rates[u] /= T;
                            }
                            r.sum_rate = std::accumulate(r.user_rates.begin(), r.user_rates.end(), 0.0);
                            const double mean = sum / T;
                            const double var = T > 1 ? std::max(0.0, (sum_sq - T * mean * mean) / (T - 1)) : 0.0;
                            r.ci95 = 1.96 * std::sqrt(var / T);
                            records.push_back(std::move(r));
                        }
                }
    }
    return records;
}

double analytic_user_rate(const System &sys, int user, int rx_antennas, double chi, double xi, double snr_db)
{
    const auto &cfg = sys.config;
    if (rx_antennas < cfg.streams)
        throw ConstraintError("analytic rates need N >= Mbar (N = " + std::to_string(rx_antennas) +
                              ", Mbar = " + std::to_string(cfg.streams) + ")");
    const auto dist =
        make_gain_distribution(rx_antennas, cfg.streams, sys.zeta_bs_u.at(user), sys.projected_power, chi);
    const auto &subset = sys.subsets.of(sys.subsets.polarization_of(user));
    const auto pos = static_cast<std::size_t>(std::find(subset.begin(), subset.end(), user) - subset.begin());
    const double J = ladder_interference(cfg.alpha_sq, subset, pos, xi);
    return ergodic_rate_closed_form(make_rate_inputs(db_to_linear(snr_db), cfg.alpha_sq[user], J, dist));
}

std::vector<RateRecord> analytic_records(const SimConfig &cfg)
{
    SimConfig dual_only = cfg;
    dual_only.schemes = {Scheme::analytic};
    const System sys = prepare_system(dual_only);
    std::vector<RateRecord> records;
    for (int N : cfg.rx_antennas)
        for (double chi : cfg.chi)
            for (double xi : cfg.xi)
                for (double snr : cfg.snr_db)
                {
                    RateRecord r;
                    r.scheme = to_string(Scheme::analytic);
                    r.snr_db = snr;
                    r.xi = xi;
                    r.chi = chi;
                    r.rx_antennas = N;
                    for (int u = 0; u < cfg.users(); ++u)
                    {
                        r.users.push_back(u + 1);
                        r.user_rates.push_back(analytic_user_rate(sys, u, N, chi, xi, snr));
                    }
                    r.sum_rate = std::accumulate(r.user_rates.begin(), r.user_rates.end(), 0.0);
                    records.push_back(std::move(r));
                }
    return records;
}

} // namespace dpirs
