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

#ifndef DPIRS_PRECODING_HPP
#define DPIRS_PRECODING_HPP

#include "dpirs/covariance.hpp"
#include "dpirs/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace dpirs {

/// Per-polarization outer precoder; the dual-polarized one is I_2 kron P.
template <typename Real = double>
struct OuterPrecoder
{
    CMatrix<Real> P;     // (M/2) x (Mbar/2), orthonormal columns
    int streams = 0;     // Mbar
    Eigen::Index null_dimension = 0;
};

/// Checks K <= Mbar <= M - 2 sum_{k' != k} r*_{k'} and Mbar <= 2 r*_k, Mbar even.
template <typename Real>
void check_stream_budget(const std::vector<CovarianceDecomposition<Real>> &decomps, std::size_t k, int streams)
{
    if (k >= decomps.size())
        throw std::invalid_argument("build_outer_precoder: cluster index out of range");
    const auto clusters = static_cast<int>(decomps.size());
    const auto antennas = static_cast<int>(2 * decomps[k].size());
    if (streams < 2 || streams % 2 != 0)
        throw ConstraintError("Mbar must be a positive even number (got " + std::to_string(streams) + ")");
    if (clusters > streams)
        throw ConstraintError("K <= Mbar violated: K = " + std::to_string(clusters) +
                              ", Mbar = " + std::to_string(streams));
    Eigen::Index interferer_rank = 0;
    for (std::size_t j = 0; j < decomps.size(); ++j)
    {
        if (decomps[j].size() != decomps[k].size())
            throw std::invalid_argument("build_outer_precoder: clusters disagree on array size");
        if (j != k)
            interferer_rank += decomps[j].rank();
    }
    const auto budget = antennas - 2 * static_cast<int>(interferer_rank);
    if (streams > budget)
        throw ConstraintError("Mbar <= M - 2*sum(r*_k') violated: Mbar = " + std::to_string(streams) +
                              ", bound = " + std::to_string(budget));
    if (streams > 2 * decomps[k].rank())
        throw ConstraintError("Mbar <= 2*r*_k violated: Mbar = " + std::to_string(streams) +
                              ", bound = " + std::to_string(2 * decomps[k].rank()));
}

/// Orthonormal basis of the orthogonal complement of range(omega); singular values
/// below 1e-10 * sigma_max count as zero.
template <typename Real>
CMatrix<Real> null_space_of_adjoint(const CMatrix<Real> &omega)
{
    const Eigen::Index n = omega.rows();
    if (omega.cols() == 0)
        return CMatrix<Real>::Identity(n, n);
    Eigen::BDCSVD<CMatrix<Real>> svd(omega, Eigen::ComputeFullU);
    const auto &s = svd.singularValues();
    const Real cutoff = Real(1e-10) * (s.size() > 0 ? s(0) : Real(0));
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > cutoff)
        ++rank;
    return svd.matrixU().rightCols(n - rank);
}

/// Orthonormal columns spanning the `columns` dominant eigenmodes of cluster k's
/// covariance inside the null space of every other cluster's eigenvectors.
template <typename Real = double>
CMatrix<Real> dominant_null_space_modes(const std::vector<CovarianceDecomposition<Real>> &decomps, std::size_t k,
                                        Eigen::Index columns, Eigen::Index *null_dimension = nullptr)
{
    if (k >= decomps.size())
        throw std::invalid_argument("dominant_null_space_modes: cluster index out of range");
    const Eigen::Index n = decomps[k].size();
    Eigen::Index cols = 0;
    for (std::size_t j = 0; j < decomps.size(); ++j)
        if (j != k)
            cols += decomps[j].rank();
    CMatrix<Real> omega(n, cols);
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < decomps.size(); ++j)
        if (j != k)
        {
            omega.middleCols(at, decomps[j].rank()) = decomps[j].eigenvectors;
            at += decomps[j].rank();
        }

    const CMatrix<Real> basis = null_space_of_adjoint(omega);
    if (null_dimension)
        *null_dimension = basis.cols();
    if (basis.cols() < columns)
        throw ConstraintError("null space of interfering eigenmodes has dimension " + std::to_string(basis.cols()) +
                              " < " + std::to_string(columns) + " requested streams");

    const CMatrix<Real> projected = basis.adjoint() * decomps[k].truncated() * basis;
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(projected);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("dominant_null_space_modes: eigen solver failed");
    return basis * eig.eigenvectors().rightCols(columns).rowwise().reverse();
}

/// Null-space outer precoder matched to the dominant eigenmodes of cluster k.
template <typename Real = double>
OuterPrecoder<Real> build_outer_precoder(const std::vector<CovarianceDecomposition<Real>> &decomps, std::size_t k,
                                         int streams)
{
    check_stream_budget(decomps, k, streams);
    OuterPrecoder<Real> out;
    out.streams = streams;
    out.P = dominant_null_space_modes(decomps, k, streams / 2, &out.null_dimension);
    return out;
}

/// ||Lambda^{1/2} U^H P||_F, the leakage of a precoder into another cluster.
template <typename Real>
Real inter_cluster_leakage(const CovarianceDecomposition<Real> &other, const CMatrix<Real> &P)
{
    return (other.whitening() * P).norm();
}

/// Users split into the two polarization subsets, both in ascending gain order.
struct SubsetAssignment
{
    std::vector<int> vertical;
    std::vector<int> horizontal;

    const std::vector<int> &of(Polarization p) const
    {
        return p == Polarization::vertical ? vertical : horizontal;
    }
    Polarization polarization_of(int user) const
    {
        if (std::find(vertical.begin(), vertical.end(), user) != vertical.end())
            return Polarization::vertical;
        if (std::find(horizontal.begin(), horizontal.end(), user) != horizontal.end())
            return Polarization::horizontal;
        throw std::invalid_argument("SubsetAssignment: user " + std::to_string(user) + " not assigned");
    }
};

/// Sort users by ascending BS-U gain (stable, so ties keep index order) and
/// alternate: first, third, ... go vertical; second, fourth, ... horizontal.
/// Indices are zero-based.
inline SubsetAssignment assign_subsets(const std::vector<double> &gains)
{
    std::vector<int> order(gains.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return gains[a] < gains[b]; });
    SubsetAssignment out;
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        (pos % 2 == 0 ? out.vertical : out.horizontal).push_back(order[pos]);
    return out;
}

/// Indicator inner precoder of length Mbar: a single one at slot g of the
/// serving-polarization half.
template <typename Real = double>
CVector<Real> build_inner_precoder(int group, int user, int streams, const SubsetAssignment &assignment)
{
    const int half = streams / 2;
    if (streams < 2 || streams % 2 != 0)
        throw std::invalid_argument("build_inner_precoder: Mbar must be a positive even number");
    if (group < 0 || group >= half)
        throw ConstraintError("G <= Mbar/2 violated: group index " + std::to_string(group) + " out of range");
    CVector<Real> v = CVector<Real>::Zero(streams);
    const bool vertical = assignment.polarization_of(user) == Polarization::vertical;
    v(vertical ? group : half + group) = Real(1);
    return v;
}

/// Normalizes squared power coefficients to unit sum; every entry must be > 0.
inline std::vector<double> normalize_power(std::vector<double> alpha_sq)
{
    if (alpha_sq.empty())
        throw std::invalid_argument("power allocation is empty");
    double total = 0;
    for (double a : alpha_sq)
    {
        if (!(a > 0) || !std::isfinite(a))
            throw std::invalid_argument("power allocation entries must be finite and > 0");
        total += a;
    }
    for (double &a : alpha_sq)
        a /= total;
    return alpha_sq;
}

} // namespace dpirs

#endif
