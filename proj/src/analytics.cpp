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

#include "dpirs/analytics.hpp"

#include "dpirs/quadrature.hpp"
#include "dpirs/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpirs {

void validate(const GainDistribution &dist)
{
    if (dist.kappa < 1)
        throw std::invalid_argument("GainDistribution: kappa must be a positive integer");
    if (!(dist.lambda > 0) || !std::isfinite(dist.lambda))
        throw std::invalid_argument("GainDistribution: lambda must be finite and > 0");
    if (!(dist.chi > 0 && dist.chi <= 1))
        throw std::invalid_argument("GainDistribution: chi must lie in (0, 1]");
}

GainDistribution make_gain_distribution(int rx_antennas, int streams, double zeta, double projected_power,
                                        double chi)
{
    if ((rx_antennas - streams) % 2 != 0 || rx_antennas < streams)
        throw std::invalid_argument("make_gain_distribution: N - Mbar must be even and non-negative");
    if (!(zeta > 0) || !(projected_power > 0))
        throw std::invalid_argument("make_gain_distribution: zeta and projected power must be > 0");
    GainDistribution d{(rx_antennas - streams) / 2 + 1, 1.0 / (zeta * projected_power), chi};
    validate(d);
    return d;
}

double gain_cdf(const GainDistribution &dist, double x)
{
    validate(dist);
    if (!(x >= 0))
        throw std::invalid_argument("gain_cdf: x must be >= 0");
    return gamma_p(dist.kappa, dist.lambda * x / dist.chi) * gamma_p(dist.kappa, dist.lambda * x);
}

double gain_pdf(const GainDistribution &dist, double x)
{
    validate(dist);
    if (!(x >= 0))
        throw std::invalid_argument("gain_pdf: x must be >= 0");
    const double k = dist.kappa, l = dist.lambda, c = dist.chi;
    if (x == 0)
        return 0.0; // both branches vanish at the origin for kappa >= 1
    // lambda^k x^(k-1) / Gamma(k) * (e^{-lx} P(k, lx/c) + c^{-k} e^{-lx/c} P(k, lx))
    const double lead = std::exp(k * std::log(l) + (k - 1) * std::log(x) - std::lgamma(k));
    const double a = std::exp(-l * x) * gamma_p(k, l * x / c);
    const double b = std::exp(-k * std::log(c) - l * x / c) * gamma_p(k, l * x);
    return lead * (a + b);
}

double meijer_log_gamma(int m, double z)
{
    if (m < 1)
        throw std::invalid_argument("meijer_log_gamma: m must be >= 1");
    if (!(z >= 0) || !std::isfinite(z))
        throw std::invalid_argument("meijer_log_gamma: z must be finite and >= 0");
    if (z == 0)
        return 0.0;
    // (m-1)! sum_{n=1}^{m} e^{1/z} E_n(1/z)
    const double s = 1.0 / z;
    double sum = 0;
    for (int n = 1; n <= m; ++n)
        sum += scaled_expint(n, s);
    return std::exp(std::lgamma(double(m))) * sum;
}

RateInputs make_rate_inputs(double rho, double alpha_sq, double interference, const GainDistribution &dist)
{
    if (!(rho > 0) || !(alpha_sq >= 0) || !(interference >= 0))
        throw std::invalid_argument("make_rate_inputs: need rho > 0, alpha^2 >= 0, interference >= 0");
    return {rho * (alpha_sq + interference), rho * interference, dist};
}

namespace {

void check_inputs(const RateInputs &in)
{
    validate(in.dist);
    if (!(in.alpha_tilde >= 0) || !(in.alpha_bar >= in.alpha_tilde) || !std::isfinite(in.alpha_bar))
        throw std::invalid_argument("RateInputs: need alpha_bar >= alpha_tilde >= 0");
}

} // namespace

double ergodic_rate_closed_form(const RateInputs &in)
{
    check_inputs(in);
    const int k = in.dist.kappa;
    const double l = in.dist.lambda, c = in.dist.chi;
    const double ab = in.alpha_bar / l, at = in.alpha_tilde / l;

    auto J = meijer_log_gamma;
    double total = J(k, ab) + J(k, c * ab) - J(k, at) - J(k, c * at);

    const double shrink = c / (1 + c);
    double log_fact = 0; // ln n!
    for (int n = 0; n < k; ++n)
    {
        if (n > 0)
            log_fact += std::log(double(n));
        const double weight = (std::pow(c, k) + std::pow(c, n)) * std::exp(-log_fact - (k + n) * std::log1p(c));
        total -= weight * (J(k + n, shrink * ab) - J(k + n, shrink * at));
    }
    const double rate = total / (std::numbers::ln2 * std::exp(std::lgamma(double(k))));
    return std::max(rate, 0.0);
}

QuadratureRate ergodic_rate_quadrature(const RateInputs &in, double abs_tol)
{
    check_inputs(in);
    QuadratureRate out;
    if (in.alpha_bar == in.alpha_tilde)
    {
        out.converged = true;
        return out;
    }
    const auto &d = in.dist;
    auto integrand = [&](double x) {
        return (std::log1p(in.alpha_bar * x) - std::log1p(in.alpha_tilde * x)) / std::numbers::ln2 *
               gain_pdf(d, x);
    };
    const auto q = integrate_half_line(integrand, d.kappa / d.lambda, abs_tol, 1e-12, 14);
    out.value = q.value;
    out.error_estimate = q.error_estimate;
    out.converged = q.converged;
    return out;
}

} // namespace dpirs
