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

#ifndef DPIRS_RECEIVER_HPP
#define DPIRS_RECEIVER_HPP

#include "dpirs/channel.hpp"
#include "dpirs/types.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dpirs {

/// Virtual channels H_^{pq} = (H~^{pq})^H P, each (N/2) x (Mbar/2).
template <typename Real = double>
PolarizedBlocks<CMatrix<Real>> virtual_channel(const PolarizedBlocks<CMatrix<Real>> &composite,
                                               const CMatrix<Real> &P)
{
    PolarizedBlocks<CMatrix<Real>> out;
    out.vv = composite.vv.adjoint() * P;
    out.vh = composite.vh.adjoint() * P;
    out.hv = composite.hv.adjoint() * P;
    out.hh = composite.hh.adjoint() * P;
    return out;
}

/// Moore-Penrose inverse with a rank test; degenerate when sigma_min < 1e-10 sigma_max.
template <typename Real = double>
struct Pseudoinverse
{
    CMatrix<Real> matrix;
    bool degenerate = false;
};

template <typename Real = double>
Pseudoinverse<Real> pseudoinverse(const CMatrix<Real> &A)
{
    Pseudoinverse<Real> out;
    Eigen::JacobiSVD<CMatrix<Real>> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const Eigen::Index r = s.size();
    if (r == 0 || !(s(0) > 0) || s(r - 1) < Real(1e-10) * s(0))
        out.degenerate = true;
    const Real cutoff = r > 0 ? Real(1e-10) * s(0) : Real(0);
    RVector<Real> inv(r);
    for (Eigen::Index i = 0; i < r; ++i)
        inv(i) = s(i) > cutoff && s(i) > 0 ? Real(1) / s(i) : Real(0);
    out.matrix = svd.matrixV() * inv.template cast<Complex<Real>>().asDiagonal() * svd.matrixU().adjoint();
    return out;
}

/// Virtual channels plus the block detectors of a user served on `serving`.
template <typename Real = double>
struct EffectiveChannel
{
    PolarizedBlocks<CMatrix<Real>> blocks;
    Polarization serving = Polarization::vertical;
    CMatrix<Real> detector_v, detector_h; // (Mbar/2) x (N/2)
    bool degenerate_v = false, degenerate_h = false;

    const CMatrix<Real> &detector(Polarization rx) const
    {
        return rx == Polarization::vertical ? detector_v : detector_h;
    }
    bool degenerate(Polarization rx) const { return rx == Polarization::vertical ? degenerate_v : degenerate_h; }
};

/// Detector per receive polarization q: pinv of the serving block H_^{sq}.
template <typename Real = double>
EffectiveChannel<Real> build_detector(const PolarizedBlocks<CMatrix<Real>> &blocks, Polarization serving)
{
    using P = Polarization;
    EffectiveChannel<Real> eff;
    eff.blocks = blocks;
    eff.serving = serving;
    auto v = pseudoinverse<Real>(blocks(serving, P::vertical));
    auto h = pseudoinverse<Real>(blocks(serving, P::horizontal));
    eff.detector_v = std::move(v.matrix);
    eff.degenerate_v = v.degenerate;
    eff.detector_h = std::move(h.matrix);
    eff.degenerate_h = h.degenerate;
    return eff;
}

struct GainReport
{
    double h_v = 0, h_h = 0;
    double best = 0; // max(h_v, h_h)
    Polarization chosen = Polarization::vertical;
    double X = 0;    // residual polarization interference power
    bool degenerate = false;
};

/// 1 / [T T^H]_{gg}; zero when the row vanishes.
template <typename Real>
double detector_gain(const CMatrix<Real> &T, Eigen::Index g)
{
    const Real n = T.row(g).squaredNorm();
    return n > 0 ? double(Real(1) / n) : 0.0;
}

/// Per-polarization gains, the best branch (ties go to vertical) and the interference
/// |[T^{p} H_^{tp} x^t]_g|^2 left on that branch by the other transmit polarization t.
template <typename Real = double>
GainReport gains_and_interference(const EffectiveChannel<Real> &eff, const CVector<Real> &x_interfering,
                                  Eigen::Index g)
{
    using P = Polarization;
    if (g < 0 || g >= eff.detector_v.rows())
        throw std::invalid_argument("gains_and_interference: group index out of range");
    GainReport r;
    r.h_v = eff.degenerate_v ? 0.0 : detector_gain(eff.detector_v, g);
    r.h_h = eff.degenerate_h ? 0.0 : detector_gain(eff.detector_h, g);
    r.degenerate = eff.degenerate_v && eff.degenerate_h;
    r.chosen = r.h_h > r.h_v ? P::horizontal : P::vertical;
    r.best = std::max(r.h_v, r.h_h);
    if (r.degenerate)
        return r;
    const P t = other(eff.serving);
    const CVector<Real> leak = eff.detector(r.chosen) * (eff.blocks(t, r.chosen) * x_interfering);
    r.X = double(std::norm(leak(g)));
    return r;
}

/// Interference power seen when decoding the user at position `pos` of an ordered
/// (ascending gain) ladder: undecoded stronger users plus xi times the already
/// cancelled weaker ones.
inline double ladder_interference(const std::vector<double> &alpha_sq, const std::vector<int> &ladder,
                                  std::size_t pos, double xi)
{
    if (pos >= ladder.size())
        throw std::invalid_argument("ladder_interference: position outside the ladder");
    double above = 0, below = 0;
    for (std::size_t m = 0; m < ladder.size(); ++m)
    {
        if (m > pos)
            above += alpha_sq.at(ladder[m]);
        else if (m < pos)
            below += alpha_sq.at(ladder[m]);
    }
    return above + xi * below;
}

/// SINR of user `user` decoding the symbol of `target`, both members of `ladder`.
inline double sic_sinr(double gain, double X, const std::vector<double> &alpha_sq, const std::vector<int> &ladder,
                       int user, int target, double xi, double rho)
{
    if (!(xi >= 0 && xi <= 1))
        throw std::invalid_argument("sic_sinr: xi must lie in [0, 1]");
    if (!(rho > 0))
        throw std::invalid_argument("sic_sinr: rho must be > 0");
    const auto find = [&](int u) {
        for (std::size_t m = 0; m < ladder.size(); ++m)
            if (ladder[m] == u)
                return m;
        throw std::invalid_argument("sic_sinr: user " + std::to_string(u) + " is not in the subset");
    };
    const std::size_t pu = find(user), pi = find(target);
    if (pi > pu)
        throw std::invalid_argument("sic_sinr: target must be decoded no later than the user");
    const double J = ladder_interference(alpha_sq, ladder, pi, xi);
    const double s = rho * gain;
    return s * alpha_sq.at(target) / (s * J + s * X + 1);
}

inline double sic_sinr(const GainReport &r, const std::vector<double> &alpha_sq, const std::vector<int> &ladder,
                       int user, int target, double xi, double rho)
{
    return sic_sinr(r.best, r.X, alpha_sq, ladder, user, target, xi, rho);
}

} // namespace dpirs

#endif
