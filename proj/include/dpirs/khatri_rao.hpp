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

#ifndef DPIRS_KHATRI_RAO_HPP
#define DPIRS_KHATRI_RAO_HPP

#include <Eigen/Core>

#include <stdexcept>

namespace dpirs {

/// Column-wise Kronecker product: column l is kron(a.col(l), b.col(l)).
/// With this ordering vec(B diag(x) C) = khatri_rao(C^T, B) x.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
khatri_rao(const Eigen::MatrixBase<DerivedA> &a, const Eigen::MatrixBase<DerivedB> &b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("khatri_rao: operands need the same column count");
    const Eigen::Index ra = a.rows(), rb = b.rows();
    Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(ra * rb, a.cols());
    for (Eigen::Index l = 0; l < a.cols(); ++l)
        for (Eigen::Index i = 0; i < ra; ++i)
            out.col(l).segment(i * rb, rb) = a(i, l) * b.col(l);
    return out;
}

/// Column-major vectorization as a column vector.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> vec(const Eigen::MatrixBase<Derived> &m)
{
    // Force column-major storage; the plain type of a transposed expression is row-major.
    const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor> plain = m;
    return Eigen::Map<const Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>>(plain.data(), plain.size());
}

} // namespace dpirs

#endif
