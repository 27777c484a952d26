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

#ifndef DPIRS_RANDOM_HPP
#define DPIRS_RANDOM_HPP

#include "dpirs/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace dpirs {

using Rng = std::mt19937_64;

/// Stream identifiers for the independent random inputs of a trial.
enum class Stream : std::uint32_t
{
    bs_user = 1,
    bs_irs = 2,
    irs_user = 3,
    symbols = 4,
    single_pol = 5,
};

/// Substream for one (trial, user, stream) triple. Seeding depends only on the
/// counters, never on the order in which trials are executed.
inline Rng substream(std::uint64_t master, std::uint64_t trial, std::uint64_t user, Stream stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(trial),  static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(user),   static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

/// rows x cols matrix of i.i.d. CN(0, 1) entries.
template <typename Real = double, typename Engine>
CMatrix<Real> complex_gaussian(Eigen::Index rows, Eigen::Index cols, Engine &rng)
{
    std::normal_distribution<Real> normal(Real(0), std::sqrt(Real(0.5)));
    CMatrix<Real> out(rows, cols);
    // Column-major fill so the draw order is fixed by the storage order.
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
        {
            const Real re = normal(rng);
            const Real im = normal(rng);
            out(i, j) = Complex<Real>(re, im);
        }
    return out;
}

} // namespace dpirs

#endif
