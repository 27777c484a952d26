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

#include "dpirs/covariance.hpp"

#include "../oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace dpirs;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const ArrayGeometry kArray{45, 0.5};
const ClusterGeometry kCluster{30 * kDeg, 30, 120};

} // namespace

TEST_CASE("one-ring covariance has unit diagonal and is Hermitian", "[covariance]")
{
    for (double az : {-70.0, -30.0, 0.0, 30.0, 70.0})
    {
        const auto R = one_ring_covariance(kArray, ClusterGeometry{az * kDeg, 30, 120});
        REQUIRE(R.rows() == 45);
        CHECK((R.diagonal().array() - 1.0).abs().maxCoeff() < 1e-14);
        CHECK((R - R.adjoint()).norm() <= 1e-12 * R.norm());
        CHECK_THAT(R.trace().real(), WithinAbs(45.0, 1e-12));
    }
}

TEST_CASE("one-ring entry matches an adaptive quadrature of the defining integral", "[covariance]")
{
    const auto R = one_ring_covariance(kArray, kCluster);
    const double spread = std::atan(30.0 / 120.0);
    for (int lag : {1, 2, 7, 20, 44})
    {
        auto part = [&](bool imag) {
            return oracle::integrate(
                       [&](double th) {
                           const double ph = -2 * std::numbers::pi * 0.5 * lag * std::sin(th);
                           return imag ? std::sin(ph) : std::cos(ph);
                       },
                       kCluster.azimuth - spread, kCluster.azimuth + spread) /
                   (2 * spread);
        };
        // entry (m, n) with m - n = lag
        CHECK_THAT(R(lag, 0).real(), WithinAbs(part(false), 1e-12));
        CHECK_THAT(R(lag, 0).imag(), WithinAbs(part(true), 1e-12));
        CHECK(std::abs(R(0, lag) - std::conj(R(lag, 0))) < 1e-15);
    }
}

TEST_CASE("vanishing angular spread gives a rank-one steering covariance", "[covariance]")
{
    const ClusterGeometry narrow{20 * kDeg, 1e-9, 120};
    const ArrayGeometry array{8, 0.5};
    const auto R = one_ring_covariance(array, narrow);
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n)
        {
            const double ph = -2 * std::numbers::pi * 0.5 * (m - n) * std::sin(narrow.azimuth);
            CHECK(std::abs(R(m, n) - std::polar(1.0, ph)) < 1e-9);
        }
    const auto dec = eigendecompose(R, 0.5);
    CHECK(dec.rank() == 1);
    CHECK(eigendecompose(R, 1.0).rank() == 1);
}

TEST_CASE("eigendecompose of the identity keeps every mode", "[covariance]")
{
    const auto dec = eigendecompose<double>(Eigen::MatrixXcd::Identity(4, 4), 1.0);
    CHECK(dec.rank() == 4);
    CHECK((dec.eigenvalues.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("effective rank equals a brute-force cumulative-sum scan", "[covariance]")
{
    for (double az : {30.0, -30.0, 70.0, -70.0})
        for (double f : {0.9, 0.99, 0.999})
        {
            const auto R = one_ring_covariance(kArray, ClusterGeometry{az * kDeg, 30, 120});
            const auto dec = eigendecompose(R, f);

            // Oracle: full spectrum from an SVD (R is PSD), scanned in descending order.
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
            const Eigen::VectorXd s = svd.singularValues();
            const double total = s.sum();
            int count = 0;
            double acc = 0;
            while (acc < f * total - 1e-9 * total)
                acc += s(count++);
            CHECK(dec.rank() == count);

            // Properties of the truncated basis.
            const auto I = Eigen::MatrixXcd::Identity(dec.rank(), dec.rank());
            CHECK((dec.eigenvectors.adjoint() * dec.eigenvectors - I).norm() < 1e-12);
            for (Eigen::Index i = 1; i < dec.rank(); ++i)
                CHECK(dec.eigenvalues(i) <= dec.eigenvalues(i - 1));
            CHECK(dec.eigenvalues.sum() >= f * R.trace().real() - 1e-9);
            const double discarded = s.tail(s.size() - dec.rank()).sum();
            CHECK_THAT((R - dec.truncated()).trace().real(), WithinAbs(discarded, 1e-9));
        }
}

TEST_CASE("eigendecompose rejects non-Hermitian input and bad fractions", "[covariance]")
{
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(3, 3);
    A(0, 1) = 0.2;
    CHECK_THROWS_AS(eigendecompose<double>(A), std::invalid_argument);
    CHECK_THROWS_AS(eigendecompose<double>(Eigen::MatrixXcd::Identity(3, 3), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(eigendecompose<double>(Eigen::MatrixXcd::Identity(3, 3), 1.5), std::invalid_argument);
    Eigen::MatrixXcd neg = -Eigen::MatrixXcd::Identity(3, 3);
    neg(0, 0) = 1;
    CHECK_THROWS_AS(eigendecompose<double>(neg), std::invalid_argument);
}

TEST_CASE("geometry validation", "[covariance]")
{
    CHECK_THROWS_AS(one_ring_covariance(ArrayGeometry{0, 0.5}, kCluster), std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(ArrayGeometry{4, 0.0}, kCluster), std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(kArray, ClusterGeometry{0, 0, 120}), std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(kArray, ClusterGeometry{0, 130, 120}), std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(kArray, ClusterGeometry{std::numbers::pi / 2, 30, 120}),
                    std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(kArray, ClusterGeometry{NAN, 30, 120}), std::invalid_argument);
    CHECK_THROWS_AS(one_ring_covariance(ArrayGeometry{4, INFINITY}, kCluster), std::invalid_argument);
}

TEST_CASE("wider angular spread decorrelates the array", "[covariance]")
{
    // Mean off-diagonal magnitude per lag, averaged over lags, is non-increasing in the spread.
    double previous = INFINITY;
    for (double radius : {2.0, 5.0, 10.0, 20.0, 30.0, 45.0, 60.0})
    {
        const auto R = one_ring_covariance(ArrayGeometry{16, 0.5}, ClusterGeometry{10 * kDeg, radius, 120});
        double mean = 0;
        for (int lag = 1; lag < 16; ++lag)
            mean += std::abs(R(lag, 0));
        mean /= 15;
        CHECK(mean <= previous + 1e-12);
        previous = mean;
    }
}

TEST_CASE("polarized covariance scaling", "[covariance]")
{
    CovarianceDecomposition<double> d;
    d.covariance = Eigen::MatrixXcd::Identity(2, 2);
    CHECK((polarized_covariance(d, 1.0, 0.0) - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);

    d = eigendecompose(one_ring_covariance(ArrayGeometry{3, 0.5}, kCluster));
    const auto P = polarized_covariance(d, 2.0, 1.0);
    CHECK((P.topLeftCorner(3, 3) - 4.0 * d.covariance).norm() < 1e-14);
    CHECK((P.bottomRightCorner(3, 3) - 4.0 * d.covariance).norm() < 1e-14);
    CHECK(P.topRightCorner(3, 3).norm() == 0.0);

    // BS-U link of the nearest-cluster user: zeta = 2e4 / 135^2, chi = 0.5
    const double zeta = 2e4 / (135.0 * 135.0);
    const auto Q = polarized_covariance(d, zeta, 0.5);
    CHECK_THAT(Q(0, 0).real(), WithinAbs(zeta * 1.5, 1e-14));
    CHECK_THAT(zeta * 1.5, WithinAbs(1.6460905349794239, 1e-12));

    CHECK_THROWS(polarized_covariance(d, 0.0, 0.5));
    CHECK_THROWS(polarized_covariance(d, 1.0, 1.5));
}
