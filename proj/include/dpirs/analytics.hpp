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

#ifndef DPIRS_ANALYTICS_HPP
#define DPIRS_ANALYTICS_HPP

namespace dpirs {

/// Law of the large-L effective gain max(h_v, h_h), with h_v ~ Gamma(kappa, 1/lambda)
/// and h_h ~ Gamma(kappa, chi/lambda) independent.
struct GainDistribution
{
    int kappa = 1;
    double lambda = 1;
    double chi = 1;
};

void validate(const GainDistribution &dist);

/// kappa = (N - Mbar)/2 + 1, lambda = 1 / (zeta * [P^H R P]_gg).
GainDistribution make_gain_distribution(int rx_antennas, int streams, double zeta, double projected_power,
                                        double chi);

double gain_cdf(const GainDistribution &dist, double x);
double gain_pdf(const GainDistribution &dist, double x);

/// int_0^inf ln(1 + z x) x^(m-1) exp(-x) dx for integer m >= 1, z >= 0.
double meijer_log_gamma(int m, double z);

/// alpha_bar = rho (alpha_u^2 + J_u), alpha_tilde = rho J_u.
struct RateInputs
{
    double alpha_bar = 0;
    double alpha_tilde = 0;
    GainDistribution dist;
};

RateInputs make_rate_inputs(double rho, double alpha_sq, double interference, const GainDistribution &dist);

/// E[log2(1 + alpha_bar h) - log2(1 + alpha_tilde h)] in closed form.
double ergodic_rate_closed_form(const RateInputs &in);

struct QuadratureRate
{
    double value = 0;
    double error_estimate = 0;
    bool converged = false;
};

/// Same expectation by double-exponential quadrature against gain_pdf.
QuadratureRate ergodic_rate_quadrature(const RateInputs &in, double abs_tol = 1e-9);

} // namespace dpirs

#endif
