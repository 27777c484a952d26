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

#ifndef DPIRS_COVARIANCE_HPP
#define DPIRS_COVARIANCE_HPP

#include "dpirs/quadrature.hpp"
#include "dpirs/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpirs {

/// Uniform linear array of co-located dual-polarized antenna pairs.
struct ArrayGeometry
{
    int pairs = 1;        // M/2
    double spacing = 0.5; // element spacing in carrier wavelengths
};

/// Ring of scatterers around a cluster center, seen from the array.
struct ClusterGeometry
{
    double azimuth = 0;  // radians from broadside
    double radius = 30;  // meters
    double distance = 120; // meters, array to cluster center
};

inline void validate(const ArrayGeometry &array)
{
    if (array.pairs < 1)
        throw std::invalid_argument("ArrayGeometry: pairs must be >= 1");
    if (!std::isfinite(array.spacing) || !(array.spacing > 0))
        throw std::invalid_argument("ArrayGeometry: spacing must be finite and > 0");
}

inline void validate(const ClusterGeometry &cluster)
{
    if (!std::isfinite(cluster.azimuth) || !std::isfinite(cluster.radius) || !std::isfinite(cluster.distance))
        throw std::invalid_argument("ClusterGeometry: non-finite geometry value");
    if (!(cluster.radius > 0))
        throw std::invalid_argument("ClusterGeometry: radius must be > 0");
    if (!(cluster.distance > cluster.radius))
        throw std::invalid_argument("ClusterGeometry: distance must exceed radius");
    constexpr double half_pi = std::numbers::pi / 2;
    if (!(cluster.azimuth > -half_pi && cluster.azimuth < half_pi))
        throw std::invalid_argument("ClusterGeometry: azimuth must lie in (-pi/2, pi/2)");
}

/// Per-polarization spatial covariance and its truncated Karhunen-Loeve basis.
template <typename Real = double>
struct CovarianceDecomposition
{
    CMatrix<Real> covariance;   // R, (M/2) x (M/2)
    RVector<Real> spectrum;     // all eigenvalues of R, descending, negatives clipped to zero
    RVector<Real> eigenvalues;  // leading r* eigenvalues (Lambda)
    CMatrix<Real> eigenvectors; // (M/2) x r*, orthonormal columns (U)

    Eigen::Index rank() const { return eigenvalues.size(); }
    Eigen::Index size() const { return covariance.rows(); }

    /// U Lambda U^H, the covariance seen through the retained modes.
    CMatrix<Real> truncated() const
    {
        return eigenvectors * eigenvalues.template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
    }

    /// Lambda^{1/2} U^H, the map from array space into the reduced channel space.
    CMatrix<Real> whitening() const
    {
        return eigenvalues.cwiseSqrt().template cast<Complex<Real>>().asDiagonal() * eigenvectors.adjoint();
    }
};

/// One-ring covariance: [R]_mn = (1/2D) int_{t0-D}^{t0+D} exp(-j 2 pi d (m-n) sin t) dt
/// with half-spread D = atan(radius / distance). The matrix is Toeplitz, so only the
/// first column is integrated (fixed-order Gauss-Legendre per lag).
template <typename Real = double>
CMatrix<Real> one_ring_covariance(const ArrayGeometry &array, const ClusterGeometry &cluster,
                                  int quadrature_order = 64)
{
    validate(array);
    validate(cluster);

    const Real pi = std::numbers::pi_v<Real>;
    const Real spread = std::atan(Real(cluster.radius) / Real(cluster.distance));
    const auto rule = gauss_legendre<Real>(quadrature_order);

    const Eigen::Index n = array.pairs;
    std::vector<Real> sines(rule.nodes.size());
    for (std::size_t i = 0; i < sines.size(); ++i)
        sines[i] = std::sin(Real(cluster.azimuth) + spread * rule.nodes[i]);

    CVector<Real> lag(n);
    for (Eigen::Index delta = 0; delta < n; ++delta)
    {
        Complex<Real> acc(0, 0);
        for (std::size_t i = 0; i < sines.size(); ++i)
        {
            const Real phase = -2 * pi * Real(array.spacing) * Real(delta) * sines[i];
            acc += rule.weights[i] * Complex<Real>(std::cos(phase), std::sin(phase));
        }
        lag(delta) = acc / Real(2);
    }
    lag(0) = Complex<Real>(1, 0);

    CMatrix<Real> R(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k)
            R(m, k) = m >= k ? lag(m - k) : std::conj(lag(k - m));
    return R;
}

/// Eigendecomposition truncated to the smallest r* whose eigenvalue sum reaches
/// energy_fraction * trace(R). Eigenvalues below zero (quadrature noise above
/// -1e-10 * lambda_max) are clipped.
template <typename Real = double>
CovarianceDecomposition<Real> eigendecompose(const CMatrix<Real> &R, Real energy_fraction = Real(0.999))
{
    if (R.rows() != R.cols() || R.rows() == 0)
        throw std::invalid_argument("eigendecompose: covariance must be square and non-empty");
    if (!(energy_fraction > 0 && energy_fraction <= 1))
        throw std::invalid_argument("eigendecompose: energy_fraction must lie in (0, 1]");
    if (!R.allFinite())
        throw std::invalid_argument("eigendecompose: covariance has non-finite entries");

    const Real scale = R.norm();
    if ((R - R.adjoint()).norm() > Real(1e-10) * scale)
        throw std::invalid_argument("eigendecompose: covariance is not Hermitian");

    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(R);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigen solver failed");

    const Eigen::Index n = R.rows();
    RVector<Real> values = solver.eigenvalues().reverse();
    CMatrix<Real> vectors = solver.eigenvectors().rowwise().reverse();

    const Real lambda_max = values(0);
    if (values(n - 1) < -Real(1e-10) * std::max(lambda_max, Real(0)))
        throw std::invalid_argument("eigendecompose: covariance is not positive semidefinite");
    values = values.cwiseMax(Real(0));

    const Real total = values.sum();
    if (!(total > 0))
        throw std::invalid_argument("eigendecompose: covariance has zero trace");

    const Real positive_floor = std::numeric_limits<Real>::epsilon() * lambda_max * Real(n);
    const Real target = energy_fraction * total - Real(1e-12) * total;
    Eigen::Index rank = 0;
    Real cumulative = 0;
    while (rank < n && values(rank) > positive_floor)
    {
        cumulative += values(rank);
        ++rank;
        if (cumulative >= target)
            break;
    }

    CovarianceDecomposition<Real> out;
    out.covariance = R;
    out.spectrum = values;
    out.eigenvalues = values.head(rank);
    out.eigenvectors = vectors.leftCols(rank);
    return out;
}

/// Dual-polarized link covariance zeta (chi + 1) (I_2 kron R). Used for checking the
/// channel generator; the simulation path never forms it.
template <typename Real = double>
CMatrix<Real> polarized_covariance(const CovarianceDecomposition<Real> &decomp, Real zeta, Real chi)
{
    if (!(zeta > 0))
        throw std::invalid_argument("polarized_covariance: zeta must be > 0");
    if (!(chi >= 0 && chi <= 1))
        throw std::invalid_argument("polarized_covariance: chi must lie in [0, 1]");

    const Eigen::Index n = decomp.size();
    CMatrix<Real> out = CMatrix<Real>::Zero(2 * n, 2 * n);
    const Real factor = zeta * (chi + 1);
    out.topLeftCorner(n, n) = factor * decomp.covariance;
    out.bottomRightCorner(n, n) = factor * decomp.covariance;
    return out;
}

} // namespace dpirs

#endif
