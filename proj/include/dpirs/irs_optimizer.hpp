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

#ifndef DPIRS_IRS_OPTIMIZER_HPP
#define DPIRS_IRS_OPTIMIZER_HPP

#include "dpirs/channel.hpp"
#include "dpirs/khatri_rao.hpp"
#include "dpirs/types.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dpirs {

/// minimize ||K theta + d||^2 subject to |theta_l| <= 1 for every coordinate.
template <typename Real = double>
struct VectorizedProblem
{
    CMatrix<Real> K;
    CVector<Real> d;

    CMatrix<Real> gram() const { return K.adjoint() * K; }
    Real objective(const CVector<Real> &theta) const { return (K * theta + d).squaredNorm(); }
};

/// The two problems that null the interfering polarization t = other(serving) at
/// the user's receive polarizations v and h. Problem q stacks
///   K = [G^{tv,T} kr S^{qq,H},  G^{th,T} kr S^{qq,H}],  d = vec((D^{tq})^H)
/// and its unknown is [theta^{vq}; theta^{hq}].
template <typename Real = double>
std::pair<VectorizedProblem<Real>, VectorizedProblem<Real>> vectorize(const ChannelRealization<Real> &real,
                                                                      Polarization serving)
{
    using P = Polarization;
    const P t = other(serving);
    const auto dims = real.dims();
    auto build = [&](P q) {
        VectorizedProblem<Real> prob;
        const CMatrix<Real> SH = real.S(q).adjoint();
        prob.K.resize(dims.rank * dims.rx_half(), 2 * dims.elements);
        prob.K.leftCols(dims.elements) = khatri_rao(real.G(t, P::vertical).transpose(), SH);
        prob.K.rightCols(dims.elements) = khatri_rao(real.G(t, P::horizontal).transpose(), SH);
        prob.d = vec(real.D(t, q).adjoint());
        return prob;
    };
    return {build(P::vertical), build(P::horizontal)};
}

/// Writes the solution of problem q into theta^{vq}, theta^{hq}.
template <typename Real>
void store_solution(ReflectionConfig<Real> &refl, Polarization q, const CVector<Real> &theta)
{
    const Eigen::Index L = theta.size() / 2;
    refl.theta(Polarization::vertical, q) = theta.head(L);
    refl.theta(Polarization::horizontal, q) = theta.tail(L);
}

template <typename Real = double>
struct MinNormSolution
{
    CVector<Real> theta;
    bool rank_deficient = false;
};

/// theta = -K^H (K K^H)^{-1} d, the smallest-norm solution of K theta + d = 0.
/// Falls back to the pseudo-inverse (flagged) when K K^H is numerically singular.
template <typename Real = double>
MinNormSolution<Real> solve_min_norm_ls(const VectorizedProblem<Real> &p)
{
    if (p.K.rows() != p.d.size())
        throw std::invalid_argument("solve_min_norm_ls: K and d disagree on row count");
    MinNormSolution<Real> out;
    if (p.K.rows() <= p.K.cols())
    {
        const CMatrix<Real> KKh = p.K * p.K.adjoint();
        Eigen::LDLT<CMatrix<Real>> ldlt(KKh);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.rcond() > Real(1e-12))
        {
            out.theta = -(p.K.adjoint() * ldlt.solve(p.d));
            return out;
        }
    }
    out.rank_deficient = true;
    Eigen::CompleteOrthogonalDecomposition<CMatrix<Real>> cod(p.K);
    cod.setThreshold(Real(1e-12));
    out.theta = -cod.solve(p.d);
    return out;
}

struct SolverOptions
{
    double tol = 1e-8;
    int max_iter = 5000;
    int power_iterations = 30;
    int check_every = 5;          // iterations between KKT evaluations
    bool record_history = false;  // keep the objective of every accepted iterate
};

template <typename Real = double>
struct ReflectionSolution
{
    CVector<Real> theta;
    Real objective = 0;
    Real kkt_residual = 0;
    int iterations = 0;
    Real max_magnitude = 0;
    bool converged = true;
    bool min_norm_feasible = false;
    std::vector<Real> history;
};

/// Coordinate-wise projection onto the closed unit disc.
template <typename Real>
CVector<Real> project_unit_disc(const CVector<Real> &x)
{
    CVector<Real> out = x;
    for (Eigen::Index i = 0; i < out.size(); ++i)
    {
        const Real m = std::abs(out(i));
        if (m > Real(1))
            out(i) /= m;
    }
    return out;
}

/// Largest eigenvalue of K^H K by power iteration using only products with K.
template <typename Real>
Real gram_spectral_norm(const CMatrix<Real> &K, int iterations)
{
    if (K.size() == 0)
        return Real(0);
    CVector<Real> x = CVector<Real>::Ones(K.cols()) / std::sqrt(Real(K.cols()));
    Real estimate = 0;
    for (int i = 0; i < iterations; ++i)
    {
        const CVector<Real> y = K.adjoint() * (K * x);
        estimate = y.norm();
        if (!(estimate > 0))
            return Real(0);
        x = y / estimate;
    }
    return estimate;
}

/// ||L (theta - Pi(theta - g/L))||_inf for a given half-gradient g = K^H (K theta + d).
template <typename Real>
Real kkt_from_gradient(const CVector<Real> &theta, const CVector<Real> &g, Real step_inverse)
{
    if (theta.size() == 0)
        return Real(0);
    const Real Lc = step_inverse > 0 ? step_inverse : Real(1);
    return ((theta - project_unit_disc<Real>(theta - g / Lc)) * Lc).cwiseAbs().maxCoeff();
}

template <typename Real>
Real kkt_residual(const VectorizedProblem<Real> &p, const CVector<Real> &theta, Real step_inverse)
{
    const CVector<Real> g = p.K.adjoint() * (p.K * theta + p.d);
    return kkt_from_gradient(theta, g, step_inverse);
}

/// Monotone accelerated projected gradient on the product of unit discs, warm
/// started from the clipped min-norm point, with gradient-mapping restarts.
/// Residuals K x + d are carried along so each iteration costs one product with
/// K and one with K^H.
template <typename Real = double>
ReflectionSolution<Real> solve_constrained_ls(const VectorizedProblem<Real> &p, const SolverOptions &opt = {})
{
    if (!(opt.tol > 0))
        throw std::invalid_argument("solve_constrained_ls: tol must be > 0");
    if (p.K.rows() != p.d.size())
        throw std::invalid_argument("solve_constrained_ls: K and d disagree on row count");

    ReflectionSolution<Real> out;
    const Eigen::Index n = p.K.cols();
    auto finish = [&](CVector<Real> theta, Real Lc) {
        out.theta = std::move(theta);
        out.objective = p.objective(out.theta);
        out.kkt_residual = kkt_residual(p, out.theta, Lc);
        out.max_magnitude = n > 0 ? out.theta.cwiseAbs().maxCoeff() : Real(0);
        if (opt.record_history && out.history.empty())
            out.history.push_back(out.objective);
        return out;
    };

    if (p.d.squaredNorm() == Real(0) || n == 0)
        return finish(CVector<Real>::Zero(n), Real(1));

    if (p.K.squaredNorm() == Real(0))
        return finish(CVector<Real>::Zero(n), Real(1)); // K = 0: every feasible point is optimal

    const auto mn = solve_min_norm_ls(p);
    if (mn.theta.cwiseAbs().maxCoeff() <= Real(1))
    {
        // Unconstrained optimum is feasible; the gradient vanishes there.
        out.min_norm_feasible = true;
        return finish(mn.theta, Real(1));
    }

    Real Lc = gram_spectral_norm(p.K, opt.power_iterations);

    CVector<Real> x = project_unit_disc<Real>(mn.theta);
    CVector<Real> rx = p.K * x + p.d;
    CVector<Real> y = x, ry = rx;
    Real fx = rx.squaredNorm();
    Real t = 1;
    const Real tol = Real(opt.tol);
    const int check_every = std::max(1, opt.check_every);
    if (opt.record_history)
        out.history.push_back(fx);

    out.converged = false;
    for (int it = 1; it <= opt.max_iter; ++it)
    {
        const CVector<Real> g = p.K.adjoint() * ry;
        CVector<Real> z, rz;
        for (;;)
        {
            z = project_unit_disc<Real>(y - g / Lc);
            rz = p.K * z + p.d;
            if ((rz - ry).squaredNorm() <= Lc * (z - y).squaredNorm() * (Real(1) + Real(1e-12)))
                break;
            Lc *= 2;
        }
        const Real fz = rz.squaredNorm();
        const CVector<Real> x_prev = x, rx_prev = rx;
        if (fz <= fx)
        {
            x = z;
            rx = rz;
            fx = fz;
        }
        if (opt.record_history)
            out.history.push_back(fx);

        if ((y - z).dot(z - x_prev).real() > 0)
            t = 1;
        const Real t_next = (Real(1) + std::sqrt(Real(1) + 4 * t * t)) / 2;
        const Real a = t / t_next, b = (t - Real(1)) / t_next;
        y = x + a * (z - x) + b * (x - x_prev);
        ry = rx + a * (rz - rx) + b * (rx - rx_prev);
        t = t_next;

        out.iterations = it;
        if (it % check_every == 0 || it == opt.max_iter)
        {
            const CVector<Real> gx = p.K.adjoint() * rx;
            if (kkt_from_gradient(x, gx, Lc) <= tol)
            {
                out.converged = true;
                break;
            }
        }
    }
    return finish(x, Lc);
}

} // namespace dpirs

#endif
