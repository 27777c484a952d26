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

#ifndef DPIRS_TYPES_HPP
#define DPIRS_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace dpirs {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Double-precision shorthands used by the simulation layer.
using cd = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

enum class Polarization { vertical, horizontal };

inline Polarization other(Polarization p)
{
    return p == Polarization::vertical ? Polarization::horizontal : Polarization::vertical;
}

inline const char *to_string(Polarization p)
{
    return p == Polarization::vertical ? "v" : "h";
}

/// Raised when a configuration violates one of the system dimension constraints.
/// The message always names the violated constraint.
class ConstraintError : public std::invalid_argument
{
public:
    explicit ConstraintError(const std::string &what) : std::invalid_argument(what) {}
};

} // namespace dpirs

#endif
