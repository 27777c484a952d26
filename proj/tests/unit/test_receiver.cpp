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

#include "dpirs/receiver.hpp"

#include "../oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace dpirs;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using P = Polarization;

namespace {

PolarizedBlocks<Eigen::MatrixXcd> random_blocks(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    PolarizedBlocks<Eigen::MatrixXcd> b;
    b.vv = oracle::randn(rows, cols, rng);
    b.vh = oracle::randn(rows, cols, rng);
    b.hv = oracle::randn(rows, cols, rng);
    b.hh = oracle::randn(rows, cols, rng);
    return b;
}

const std::vector<double> kAlpha{0.4, 0.35, 0.2, 0.05};

} // namespace

TEST_CASE("square invertible blocks are inverted exactly", "[receiver]")
{
    const auto b = random_blocks(3, 3, 1);
    const auto eff = build_detector(b, P::vertical);
    CHECK_FALSE(eff.degenerate_v);
    CHECK((eff.detector_v * b.vv - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
    CHECK((eff.detector_h * b.vh - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);

    const auto eh = build_detector(b, P::horizontal);
    CHECK((eh.detector_v * b.hv - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
    CHECK((eh.detector_h * b.hh - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("tall blocks get a left inverse", "[receiver]")
{
    const auto b = random_blocks(4, 2, 2);
    const auto eff = build_detector(b, P::vertical);
    CHECK((eff.detector_v * b.vv - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-8);
    CHECK((eff.detector_v - oracle::pinv(b.vv)).norm() < 1e-10);
}

TEST_CASE("isometric blocks have unit gains", "[receiver]")
{
    std::mt19937_64 rng(3);
    const Eigen::MatrixXcd Q = Eigen::HouseholderQR<Eigen::MatrixXcd>(oracle::randn(4, 4, rng)).householderQ();
    PolarizedBlocks<Eigen::MatrixXcd> b;
    b.vv = Q.leftCols(2);
    b.vh = Q.rightCols(2);
    b.hv = b.hh = Eigen::MatrixXcd::Zero(4, 2);
    const auto eff = build_detector(b, P::vertical);
    CHECK((eff.detector_v - b.vv.adjoint()).norm() < 1e-12);
    const auto r = gains_and_interference(eff, Eigen::VectorXcd(Eigen::VectorXcd::Ones(2)), 1);
    CHECK_THAT(r.h_v, WithinAbs(1.0, 1e-12));
    CHECK_THAT(r.h_h, WithinAbs(1.0, 1e-12));
}

TEST_CASE("2x2 gain matches the cofactor inverse", "[receiver]")
{
    const auto b = random_blocks(2, 2, 4);
    const auto eff = build_detector(b, P::vertical);
    const auto r = gains_and_interference(eff, Eigen::VectorXcd(Eigen::VectorXcd::Zero(2)), 0);
    // Square case: T T^H = (H^H H)^{-1}, inverted by cofactors.
    const Eigen::MatrixXcd inv = oracle::inverse2(b.vv.adjoint() * b.vv);
    CHECK_THAT(r.h_v, WithinRel(1.0 / inv(0, 0).real(), 1e-10));
}

TEST_CASE("perfectly nulled cross blocks leave no polarization interference", "[receiver]")
{
    auto b = random_blocks(2, 2, 5);
    b.hv.setZero();
    b.hh.setZero();
    const auto eff = build_detector(b, P::vertical);
    std::mt19937_64 rng(6);
    const auto r = gains_and_interference(eff, Eigen::VectorXcd(oracle::randn(2, 1, rng)), 0);
    CHECK(r.X == 0.0);
}

TEST_CASE("equal branch gains pick the vertical branch", "[receiver]")
{
    auto b = random_blocks(2, 2, 7);
    b.vh = b.vv;
    const auto eff = build_detector(b, P::vertical);
    const auto r = gains_and_interference(eff, Eigen::VectorXcd(Eigen::VectorXcd::Zero(2)), 1);
    CHECK(r.h_v == r.h_h);
    CHECK(r.chosen == P::vertical);
    CHECK(r.best == r.h_v);
}

TEST_CASE("interference matches the dense detector output", "[receiver]")
{
    for (std::uint64_t seed = 10; seed < 15; ++seed)
    {
        const auto b = random_blocks(3, 2, seed);
        std::mt19937_64 rng(seed);
        const Eigen::VectorXcd xh = oracle::randn(2, 1, rng);
        for (int g = 0; g < 2; ++g)
        {
            const auto eff = build_detector(b, P::vertical);
            const auto r = gains_and_interference(eff, xh, g);

            // Full receive vector with only the horizontal transmission, block-diagonal detector.
            Eigen::VectorXcd y(6);
            y << b.hv * xh, b.hh * xh;
            Eigen::MatrixXcd det = Eigen::MatrixXcd::Zero(4, 6);
            det.topLeftCorner(2, 3) = oracle::pinv(b.vv);
            det.bottomRightCorner(2, 3) = oracle::pinv(b.vh);
            const Eigen::VectorXcd z = det * y;
            const int branch = r.chosen == P::vertical ? 0 : 2;
            CHECK_THAT(r.X, WithinRel(std::norm(z(branch + g)), 1e-9));
            CHECK(r.best == std::max(r.h_v, r.h_h));
        }
    }
}

TEST_CASE("rank-deficient blocks are flagged and contribute zero gain", "[receiver]")
{
    auto b = random_blocks(2, 2, 8);
    b.vv.col(1) = b.vv.col(0);
    const auto eff = build_detector(b, P::vertical);
    CHECK(eff.degenerate_v);
    CHECK_FALSE(eff.degenerate_h);
    const auto r = gains_and_interference(eff, Eigen::VectorXcd(Eigen::VectorXcd::Zero(2)), 0);
    CHECK(r.h_v == 0.0);
    CHECK(r.h_h > 0.0);
    CHECK_FALSE(r.degenerate);

    b.vh.col(1) = 2.0 * b.vh.col(0);
    const auto r2 = gains_and_interference(build_detector(b, P::vertical), Eigen::VectorXcd(Eigen::VectorXcd::Zero(2)), 0);
    CHECK(r2.degenerate);
    CHECK(r2.best == 0.0);
}

TEST_CASE("SINR substitutions", "[receiver]")
{
    const std::vector<int> subset{0, 2};
    // rho * h = 100, X = 0
    CHECK_THAT(sic_sinr(100.0, 0.0, kAlpha, subset, 2, 0, 0.0, 1.0), WithinRel(40.0 / 21.0, 1e-14));
    CHECK_THAT(sic_sinr(100.0, 0.0, kAlpha, subset, 2, 2, 0.0, 1.0), WithinRel(20.0, 1e-14));
    CHECK_THAT(sic_sinr(100.0, 0.0, kAlpha, subset, 2, 2, 0.01, 1.0), WithinRel(20.0 / 1.4, 1e-14));
    // X enters like interference power
    CHECK_THAT(sic_sinr(10.0, 0.1, kAlpha, subset, 2, 2, 0.0, 10.0), WithinRel(20.0 / (10.0 + 1.0), 1e-14));

    CHECK_THROWS(sic_sinr(1.0, 0.0, kAlpha, subset, 0, 2, 0.0, 1.0)); // decode target after the user
    CHECK_THROWS(sic_sinr(1.0, 0.0, kAlpha, subset, 1, 1, 0.0, 1.0)); // user outside subset
    CHECK_THROWS(sic_sinr(1.0, 0.0, kAlpha, subset, 2, 2, 1.5, 1.0));
    CHECK_THROWS(sic_sinr(1.0, 0.0, kAlpha, subset, 2, 2, 0.0, 0.0));
}

TEST_CASE("SINR monotonicity", "[receiver]")
{
    const std::vector<int> ladder{0, 1, 2, 3};
    const double base = sic_sinr(3.0, 0.2, kAlpha, ladder, 2, 1, 0.01, 10.0);
    CHECK(sic_sinr(3.1, 0.2, kAlpha, ladder, 2, 1, 0.01, 10.0) > base);
    CHECK(sic_sinr(3.0, 0.25, kAlpha, ladder, 2, 1, 0.01, 10.0) < base);
    CHECK(sic_sinr(3.0, 0.2, kAlpha, ladder, 2, 1, 0.05, 10.0) < base);
    auto more = kAlpha;
    more[1] += 0.01;
    CHECK(sic_sinr(3.0, 0.2, more, ladder, 2, 1, 0.01, 10.0) > base);
    more = kAlpha;
    more[3] += 0.01; // a stronger, undecoded user adds interference
    CHECK(sic_sinr(3.0, 0.2, more, ladder, 2, 1, 0.01, 10.0) < base);
}

TEST_CASE("perfect SIC ladder telescopes", "[receiver]")
{
    const std::vector<int> ladder{0, 1, 2, 3};
    for (double s : {0.5, 10.0, 300.0})
    {
        double total = 0;
        for (int i : ladder)
            total += std::log2(1 + sic_sinr(s, 0.0, kAlpha, ladder, 3, i, 0.0, 1.0));
        CHECK_THAT(total, WithinRel(std::log2(1 + s * 1.0), 1e-12));
    }
}

TEST_CASE("point-to-point reduction and nonnegative rates", "[receiver]")
{
    const std::vector<double> one{1.0};
    const double g = 2.5, rho = 31.6;
    CHECK_THAT(std::log2(1 + sic_sinr(g, 0.0, one, {0}, 0, 0, 0.0, rho)), WithinRel(std::log2(1 + rho * g), 1e-14));
    const std::vector<int> subset{1, 3};
    for (double xi : {0.0, 0.5, 1.0})
        CHECK(std::log2(1 + sic_sinr(0.7, 0.3, kAlpha, subset, 3, 3, xi, 5.0)) >= 0);
}
