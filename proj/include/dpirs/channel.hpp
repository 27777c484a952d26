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

#ifndef DPIRS_CHANNEL_HPP
#define DPIRS_CHANNEL_HPP

#include "dpirs/covariance.hpp"
#include "dpirs/random.hpp"
#include "dpirs/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpirs {

/// Large-scale power gains and cross-polar leakage factors of the three links.
struct LinkGains
{
    double zeta_bs_u = 1;
    double zeta_bs_irs = 1;
    double zeta_irs_u = 1;
    double chi_bs_u = 0;
    double chi_bs_irs = 0;
};

inline void validate(const LinkGains &g)
{
    for (double z : {g.zeta_bs_u, g.zeta_bs_irs, g.zeta_irs_u})
        if (!std::isfinite(z) || !(z > 0))
            throw std::invalid_argument("LinkGains: every zeta must be finite and > 0");
    for (double c : {g.chi_bs_u, g.chi_bs_irs})
        if (!(c >= 0 && c <= 1))
            throw std::invalid_argument("LinkGains: chi must lie in [0, 1]");
}

/// zeta = gain * distance^(-exponent)
inline double path_loss(double gain, double distance, double exponent)
{
    if (!(distance > 0) || !std::isfinite(distance))
        throw std::invalid_argument("path_loss: distance must be finite and > 0");
    if (!(exponent >= 0))
        throw std::invalid_argument("path_loss: exponent must be >= 0");
    if (!(gain > 0) || !std::isfinite(gain))
        throw std::invalid_argument("path_loss: gain must be finite and > 0");
    return gain * std::pow(distance, -exponent);
}

/// Four matrices indexed by (transmit, receive) polarization.
template <typename Mat>
struct PolarizedBlocks
{
    Mat vv, vh, hv, hh;

    Mat &operator()(Polarization tx, Polarization rx)
    {
        if (tx == Polarization::vertical)
            return rx == Polarization::vertical ? vv : vh;
        return rx == Polarization::vertical ? hv : hh;
    }
    const Mat &operator()(Polarization tx, Polarization rx) const
    {
        return const_cast<PolarizedBlocks &>(*this)(tx, rx);
    }
};

struct ChannelDims
{
    Eigen::Index rank = 1;     // r*
    Eigen::Index rx = 2;       // N, total receive antennas (N/2 per polarization)
    Eigen::Index elements = 1; // L

    Eigen::Index rx_half() const { return rx / 2; }
};

inline void validate(const ChannelDims &d)
{
    if (d.rank < 1 || d.elements < 1 || d.rx < 2 || d.rx % 2 != 0)
        throw std::invalid_argument("ChannelDims: need rank >= 1, elements >= 1 and an even rx count >= 2");
}

/// One fast-fading draw of every link with the large-scale factors already applied.
///   D(p, q): rank x N/2,  BS polarization p to user polarization q
///   G(p, q): L x rank,    BS polarization p to IRS polarization q
///   S_v, S_h: L x N/2,    co-polar IRS to user
template <typename Real = double>
struct ChannelRealization
{
    PolarizedBlocks<CMatrix<Real>> D;
    PolarizedBlocks<CMatrix<Real>> G;
    CMatrix<Real> S_v, S_h;
    LinkGains gains;

    ChannelDims dims() const
    {
        return {D.vv.rows(), 2 * D.vv.cols(), G.vv.rows()};
    }
    const CMatrix<Real> &S(Polarization p) const { return p == Polarization::vertical ? S_v : S_h; }
};

/// Passive reflection coefficients theta^{pq} = diag(Phi^{pq}), IRS polarization p to q.
template <typename Real = double>
struct ReflectionConfig
{
    PolarizedBlocks<CVector<Real>> theta;

    static ReflectionConfig zeros(Eigen::Index elements)
    {
        ReflectionConfig r;
        for (auto *t : {&r.theta.vv, &r.theta.vh, &r.theta.hv, &r.theta.hh})
            *t = CVector<Real>::Zero(elements);
        return r;
    }

    Real max_magnitude() const
    {
        Real m = 0;
        for (const auto *t : {&theta.vv, &theta.vh, &theta.hv, &theta.hh})
            if (t->size() > 0)
                m = std::max(m, t->cwiseAbs().maxCoeff());
        return m;
    }
};

/// Direct BS-user blocks only (used by the no-IRS baseline as well).
template <typename Real = double, typename Engine>
PolarizedBlocks<CMatrix<Real>> draw_direct(Eigen::Index rank, Eigen::Index rx_half, double zeta, double chi,
                                           Engine &rng)
{
    PolarizedBlocks<CMatrix<Real>> D;
    const Real co = std::sqrt(Real(zeta));
    const Real cross = co * std::sqrt(Real(chi));
    D.vv = co * complex_gaussian<Real>(rank, rx_half, rng);
    D.vh = cross * complex_gaussian<Real>(rank, rx_half, rng);
    D.hv = cross * complex_gaussian<Real>(rank, rx_half, rng);
    D.hh = co * complex_gaussian<Real>(rank, rx_half, rng);
    return D;
}

/// Draw every block from three independent engines (BS-U, BS-IRS, IRS-U).
template <typename Real = double, typename Engine>
ChannelRealization<Real> draw_realization(const ChannelDims &dims, const LinkGains &gains, Engine &rng_bs_u,
                                          Engine &rng_bs_irs, Engine &rng_irs_u)
{
    validate(dims);
    validate(gains);

    ChannelRealization<Real> out;
    out.gains = gains;
    out.D = draw_direct<Real>(dims.rank, dims.rx_half(), gains.zeta_bs_u, gains.chi_bs_u, rng_bs_u);

    const Real co = std::sqrt(Real(gains.zeta_bs_irs) / 2);
    const Real cross = co * std::sqrt(Real(gains.chi_bs_irs));
    out.G.vv = co * complex_gaussian<Real>(dims.elements, dims.rank, rng_bs_irs);
    out.G.vh = cross * complex_gaussian<Real>(dims.elements, dims.rank, rng_bs_irs);
    out.G.hv = cross * complex_gaussian<Real>(dims.elements, dims.rank, rng_bs_irs);
    out.G.hh = co * complex_gaussian<Real>(dims.elements, dims.rank, rng_bs_irs);

    const Real s = std::sqrt(Real(gains.zeta_irs_u));
    out.S_v = s * complex_gaussian<Real>(dims.elements, dims.rx_half(), rng_irs_u);
    out.S_h = s * complex_gaussian<Real>(dims.elements, dims.rx_half(), rng_irs_u);
    return out;
}

/// Convenience overload drawing all links from one engine.
template <typename Real = double, typename Engine>
ChannelRealization<Real> draw_realization(const ChannelDims &dims, const LinkGains &gains, Engine &rng)
{
    return draw_realization<Real>(dims, gains, rng, rng, rng);
}

/// Reduced (N/2 x rank) receive-side block for transmit p, receive q:
///   (S^{qq})^H (Phi^{vq} G^{pv} + Phi^{hq} G^{ph}) + (D^{pq})^H
template <typename Real = double>
CMatrix<Real> reduced_block(const ChannelRealization<Real> &real, const ReflectionConfig<Real> &refl,
                            Polarization tx, Polarization rx)
{
    using P = Polarization;
    const auto &S = real.S(rx);
    CMatrix<Real> reflected = refl.theta(P::vertical, rx).asDiagonal() * real.G(tx, P::vertical);
    reflected.noalias() += refl.theta(P::horizontal, rx).asDiagonal() * real.G(tx, P::horizontal);
    CMatrix<Real> out = real.D(tx, rx).adjoint();
    out.noalias() += S.adjoint() * reflected;
    return out;
}

/// Composite blocks H~^{pq} = U Lambda^{1/2} [reduced_block]^H, each (M/2) x (N/2).
template <typename Real = double>
PolarizedBlocks<CMatrix<Real>> compose_channel(const ChannelRealization<Real> &real,
                                               const ReflectionConfig<Real> &refl,
                                               const CovarianceDecomposition<Real> &decomp)
{
    const auto dims = real.dims();
    if (decomp.rank() != dims.rank)
        throw std::invalid_argument("compose_channel: realization rank does not match covariance rank");
    for (const auto *t : {&refl.theta.vv, &refl.theta.vh, &refl.theta.hv, &refl.theta.hh})
        if (t->size() != dims.elements)
            throw std::invalid_argument("compose_channel: reflection vector length does not match L");
    if (refl.max_magnitude() > Real(1) + Real(1e-9))
        throw std::invalid_argument("compose_channel: reflection coefficient violates passivity");

    using P = Polarization;
    const CMatrix<Real> W = decomp.whitening(); // Lambda^{1/2} U^H
    PolarizedBlocks<CMatrix<Real>> out;
    for (P tx : {P::vertical, P::horizontal})
        for (P rx : {P::vertical, P::horizontal})
            out(tx, rx) = (reduced_block(real, refl, tx, rx) * W).adjoint();
    return out;
}

} // namespace dpirs

#endif
