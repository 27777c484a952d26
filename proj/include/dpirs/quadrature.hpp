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

#ifndef DPIRS_QUADRATURE_HPP
#define DPIRS_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dpirs {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
template <typename Real = double>
struct GaussLegendreRule
{
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

template <typename Real = double>
GaussLegendreRule<Real> gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: rule order must be positive");

    GaussLegendreRule<Real> rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const Real pi = std::numbers::pi_v<Real>;

    // Roots are symmetric; Newton on P_n from the Tricomi initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1)
                p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 4 * std::numeric_limits<Real>::epsilon())
                break;
        }
        if (n == 1)
        {
            rule.nodes[0] = 0;
            rule.weights[0] = 2;
            break;
        }
        // Recompute derivative at the converged root for the weight.
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            Real pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

struct QuadratureResult
{
    double value = 0;
    double error_estimate = 0;
    int levels = 0;
    bool converged = false;
};

/// Double-exponential quadrature of f over [0, inf).
///
/// Uses the tanh-sinh rule on t in (0, 1) composed with x = scale * t / (1 - t).
/// Written in terms of the abscissa u that simplifies to x = scale * exp(pi * sinh(u)),
/// which avoids forming 1 - t. Step size is halved until two successive levels agree
/// to max(abs_tol, rel_tol * |I|).
template <typename F>
QuadratureResult integrate_half_line(F &&f, double scale, double abs_tol = 1e-9, double rel_tol = 1e-13,
                                     int max_level = 12)
{
    if (!(scale > 0))
        throw std::invalid_argument("integrate_half_line: scale must be positive");

    constexpr double pi = std::numbers::pi;
    constexpr double u_max = 4.5;

    auto term = [&](double u) {
        const double s = pi * std::sinh(u);
        if (s > 700.0 || s < -700.0)
            return 0.0;
        const double x = scale * std::exp(s);
        const double jac = x * pi * std::cosh(u);
        const double fx = f(x);
        return std::isfinite(fx) ? fx * jac : 0.0;
    };

    double h = 0.5;
    long n_max = static_cast<long>(u_max / h);
    double sum = term(0.0);
    for (long k = 1; k <= n_max; ++k)
        sum += term(k * h) + term(-k * h);
    double estimate = h * sum;

    QuadratureResult out;
    for (int level = 1; level <= max_level; ++level)
    {
        h *= 0.5;
        n_max = static_cast<long>(u_max / h);
        double odd = 0;
        for (long k = 1; k <= n_max; k += 2)
            odd += term(k * h) + term(-k * h);
        sum += odd;
        const double refined = h * sum;
        out.error_estimate = std::abs(refined - estimate);
        out.value = refined;
        out.levels = level;
        estimate = refined;
        if (level >= 3 && out.error_estimate <= std::max(abs_tol, rel_tol * std::abs(refined)))
        {
            out.converged = true;
            break;
        }
    }
    return out;
}

} // namespace dpirs

#endif
