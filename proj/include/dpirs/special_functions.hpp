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

#ifndef DPIRS_SPECIAL_FUNCTIONS_HPP
#define DPIRS_SPECIAL_FUNCTIONS_HPP

namespace dpirs {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without cancellation.
double gamma_q(double a, double x);

/// exp(x) * E_n(x) for integer n >= 1 and x >= 0 (x > 0 when n == 1).
/// The scaling keeps the value representable for large x where E_n underflows.
double scaled_expint(int n, double x);

} // namespace dpirs

#endif
