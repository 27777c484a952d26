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

#include "dpirs/validate.hpp"

#include "dpirs/analytics.hpp"
#include "dpirs/khatri_rao.hpp"
#include "dpirs/random.hpp"
#include "dpirs/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace dpirs {

namespace {

std::string fmt(const char *f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace

std::vector<CheckResult> run_invariant_suite(const SimConfig &cfg, std::uint64_t seed)
{
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool ok, std::string detail) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };

    const System sys = prepare_system(cfg);

    double herm = 0, diag = 0;
    for (const auto &d : sys.dual)
    {
        herm = std::max(herm, (d.covariance - d.covariance.adjoint()).norm() / d.covariance.norm());
        diag = std::max(diag, (d.covariance.diagonal().array() - 1.0).abs().maxCoeff());
    }
    add("covariance hermitian, unit diagonal", herm < 1e-12 && diag < 1e-12,
        fmt("max asymmetry %.3e", herm) + fmt(", max |diag - 1| %.3e", diag));

    double leak = 0;
    for (std::size_t j = 0; j < sys.dual.size(); ++j)
        if (static_cast<int>(j) != cfg.cluster)
            leak = std::max(leak, inter_cluster_leakage(sys.dual[j], sys.outer.P));
    const double ortho =
        (sys.outer.P.adjoint() * sys.outer.P - MatrixXcd::Identity(sys.outer.P.cols(), sys.outer.P.cols())).norm();
    add("outer precoder nulls other clusters", leak < 1e-10 && ortho < 1e-10,
        fmt("max leakage %.3e", leak) + fmt(", orthonormality error %.3e", ortho));

    Rng rng = substream(seed, 0, 0, Stream::symbols);
    {
        const MatrixXcd A = complex_gaussian<double>(3, 4, rng), C = complex_gaussian<double>(4, 2, rng);
        const VectorXcd b = complex_gaussian<double>(4, 1, rng);
        const double err = (khatri_rao(C.transpose(), A) * b - vec(A * b.asDiagonal() * C)).norm();
        add("khatri-rao vectorization identity", err < 1e-12, fmt("error %.3e", err));
    }

    {
        double worst_kkt = 0, worst_mag = 0;
        bool ok = true;
        for (int i = 0; i < 10; ++i)
        {
            VectorizedProblem<double> p;
            p.K = 0.1 * complex_gaussian<double>(12, 40, rng);
            p.d = 3.0 * complex_gaussian<double>(12, 1, rng);
            const auto s = solve_constrained_ls(p, cfg.solver);
            worst_kkt = std::max(worst_kkt, s.kkt_residual);
            worst_mag = std::max(worst_mag, s.max_magnitude);
            ok = ok && s.converged;
        }
        add("constrained solver certificate", ok && worst_kkt <= cfg.solver.tol && worst_mag <= 1 + 1e-9,
            fmt("worst KKT %.3e", worst_kkt) + fmt(", max |theta| %.6f", worst_mag));
    }

    {
        double worst = 0;
        for (int kappa = 1; kappa <= 3; ++kappa)
            for (double chi : {0.05, 0.5, 1.0})
                for (double rho_db : {0.0, 20.0})
                {
                    const RateInputs in{db_to_linear(rho_db) * 0.6, db_to_linear(rho_db) * 0.2, {kappa, 0.5, chi}};
                    const double cf = ergodic_rate_closed_form(in);
                    const double q = ergodic_rate_quadrature(in).value;
                    worst = std::max(worst, std::abs(cf - q) / std::max(std::abs(q), 1e-300));
                }
        add("closed-form rate matches quadrature", worst < 1e-6, fmt("worst relative error %.3e", worst));
    }

    {
        const double e1 = meijer_log_gamma(2, 1.0);
        add("log-gamma transform anchor m=2, z=1", std::abs(e1 - 1) < 1e-12, fmt("value %.15f", e1));
    }

    {
        const auto samples = irs_group_samples(sys, TrialPoint{cfg.rx_antennas.front(), cfg.elements.front(),
                                                               cfg.chi.front()},
                                               seed);
        double mag = 0;
        bool finite = true;
        for (const auto &s : samples)
        {
            mag = std::max(mag, s.max_reflection);
            finite = finite && std::isfinite(s.gain) && s.gain >= 0 && s.X >= 0;
        }
        add("trial reflections passive, gains finite", finite && mag <= 1 + 1e-9, fmt("max |theta| %.6f", mag));
    }
    return out;
}

} // namespace dpirs
