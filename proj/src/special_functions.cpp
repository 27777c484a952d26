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

#include "dpirs/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dpirs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIter = 10000;

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxIter; ++n)
    {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x)
{
    if (!(a > 0) || !(x >= 0) || !std::isfinite(a))
        throw std::domain_error("incomplete gamma: requires a > 0 and x >= 0");
}

} // namespace

double gamma_p(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x)
{
    check_gamma_args(a, x);
    if (x == 0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double scaled_expint(int n, double x)
{
    if (n < 1 || !(x >= 0) || (n == 1 && x == 0))
        throw std::domain_error("scaled_expint: requires n >= 1, x >= 0 (x > 0 for n = 1)");
    if (std::isinf(x))
        return 0.0;

    const int nm1 = n - 1;
    if (x == 0)
        return 1.0 / nm1;

    if (x > 1.0)
    {
        // Continued fraction returns exp(x) * E_n(x) directly.
        double b = x + n;
        double c = 1.0 / kTiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < kMaxIter; ++i)
        {
            const double a = -static_cast<double>(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < kEps)
                break;
        }
        return h;
    }

    // Power series around zero.
    constexpr double euler = std::numbers::egamma;
    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - euler;
    double fact = 1.0;
    for (int i = 1; i < kMaxIter; ++i)
    {
        fact *= -x / i;
        double del;
        if (i != nm1)
        {
            del = -fact / (i - nm1);
        }
        else
        {
            double psi = -euler;
            for (int ii = 1; ii <= nm1; ++ii)
                psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * kEps)
            break;
    }
    return std::exp(x) * ans;
}

} // namespace dpirs
