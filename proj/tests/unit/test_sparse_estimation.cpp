// SPDX-License-Identifier: Apache-2.0
//
// hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
// Copyright (C) 2026 hydrolink contributors
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

#include "error.hpp"
#include "sparse_estimation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace hydrolink;
using namespace hydrolink::cs;

namespace {

double energy(const std::vector<cplx>& v)
{
    double e = 0.0;
    for (const auto& x : v)
        e += std::norm(x);
    return e;
}

// Brute-force best 2-sparse least-squares fit: the support minimising ||y - Phi_S x_S||.
std::vector<std::size_t> best_pair_support(const Eigen::MatrixXcd& phi, const std::vector<cplx>& y)
{
    const Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> arg;
    for (Eigen::Index i = 0; i < phi.cols(); ++i)
        for (Eigen::Index j = i + 1; j < phi.cols(); ++j) {
            Eigen::MatrixXcd a(phi.rows(), 2);
            a.col(0) = phi.col(i);
            a.col(1) = phi.col(j);
            const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(yv);
            const double r = (yv - a * x).norm();
            if (r < best) {
                best = r;
                arg = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
            }
        }
    return arg;
}

} // namespace

TEST_CASE("sparsity budget is ten percent")
{
    CHECK(sparsity_budget(64) == 6);
    CHECK(sparsity_budget(100) == 10);
    CHECK(sparsity_budget(9) == 0);
}

TEST_CASE("generated channels are seeded, unit energy and supported where they say")
{
    const SparseChannel a = generate_sparse_channel(64, 3, 16.0, 7);
    const SparseChannel b = generate_sparse_channel(64, 3, 16.0, 7);
    const SparseChannel c = generate_sparse_channel(64, 3, 16.0, 8);
    CHECK(a.taps == b.taps);
    CHECK(a.taps != c.taps);
    CHECK(energy(a.taps) == doctest::Approx(1.0));
    REQUIRE(a.support.size() == 3);
    CHECK(std::is_sorted(a.support.begin(), a.support.end()));
    for (std::size_t i = 0; i < a.taps.size(); ++i) {
        const bool in = std::find(a.support.begin(), a.support.end(), i) != a.support.end();
        CHECK((std::abs(a.taps[i]) > 0.0) == in);
    }
    CHECK(check_sparsity(a.taps).ok);
}

TEST_CASE("dense responses fail the sparsity check")
{
    std::vector<cplx> dense(64, cplx(1.0, 0.0));
    const auto r = check_sparsity(dense);
    CHECK(r.nonzero_taps == 64);
    CHECK_FALSE(r.ok);
    CHECK(r.top_energy_fraction == doctest::Approx(6.0 / 64.0));
}

TEST_CASE("pilot matrices have unit-norm columns")
{
    for (auto scheme : {PilotScheme::gaussian, PilotScheme::partial_fourier}) {
        const PilotMatrix p = PilotMatrix::generate(20, 64, scheme, 3);
        CHECK(p.rows() == 20);
        CHECK(p.cols() == 64);
        for (Eigen::Index j = 0; j < 64; ++j)
            CHECK(p.matrix().col(j).norm() == doctest::Approx(1.0));
    }
    CHECK(PilotMatrix::generate(16, 16, PilotScheme::identity, 0).matrix().isIdentity());
    CHECK_THROWS_AS(PilotMatrix::generate(65, 64, PilotScheme::gaussian, 0), DimensionError);
    CHECK_THROWS_AS(PilotMatrix::generate(8, 16, PilotScheme::identity, 0), DimensionError);
    CHECK(PilotMatrix::generate(0, 64, PilotScheme::gaussian, 0).rows() == 0);
}

TEST_CASE("noiseless measurement is the matrix product")
{
    const auto h = generate_sparse_channel(32, 3, 8.0, 1);
    const auto phi = PilotMatrix::generate(12, 32, PilotScheme::gaussian, 2);
    const auto y = measure(h.taps, phi, 0.0, 0);
    const Eigen::Map<const Eigen::VectorXcd> hv(h.taps.data(), 32);
    const Eigen::VectorXcd ref = phi.matrix() * hv;
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(std::abs(y[i] - ref(static_cast<Eigen::Index>(i))) < 1e-14);
    CHECK_THROWS_AS(measure(h.taps, PilotMatrix::generate(12, 31, PilotScheme::gaussian, 2), 0.0, 0), DimensionError);
}

TEST_CASE("OMP agrees with exhaustive support search on small problems")
{
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto h = generate_sparse_channel(32, 2, 8.0, seed);
        const auto phi = PilotMatrix::generate(10, 32, PilotScheme::gaussian, 1000 + seed);
        const auto y = measure(h.taps, phi, 0.0, 0);
        const auto r = omp_reconstruct(y, phi, {2, 1e-12});
        const auto oracle = best_pair_support(phi.matrix(), y);
        CHECK(oracle == h.support);
        if (nmse(h.taps, r.estimate) < 1e-8) {
            ++exact;
            auto s = r.support;
            std::sort(s.begin(), s.end());
            CHECK(s == oracle);
        }
    }
    CHECK(exact >= 36);
}

TEST_CASE("OMP never reselects and its residual never grows")
{
    const auto h = generate_sparse_channel(64, 6, 16.0, 4);
    const auto phi = PilotMatrix::generate(24, 64, PilotScheme::gaussian, 5);
    const auto y = measure(h.taps, phi, 0.05, 6);
    const auto r = omp_reconstruct(y, phi, {12, 0.0});
    auto s = r.support;
    std::sort(s.begin(), s.end());
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(r.residual_norms.size() == r.iterations + 1);
    for (std::size_t i = 1; i < r.residual_norms.size(); ++i)
        CHECK(r.residual_norms[i] <= r.residual_norms[i - 1] + 1e-12);
    for (std::size_t i = 0; i < r.estimate.size(); ++i)
        if (std::find(r.support.begin(), r.support.end(), i) == r.support.end())
            CHECK(r.estimate[i] == cplx(0.0, 0.0));
}

TEST_CASE("OMP stops on the residual tolerance")
{
    const auto h = generate_sparse_channel(64, 3, 16.0, 11);
    const auto phi = PilotMatrix::generate(20, 64, PilotScheme::gaussian, 12);
    const auto y = measure(h.taps, phi, 0.0, 0);
    const auto r = omp_reconstruct(y, phi, OmpStop::defaults(64, y));
    CHECK(r.iterations == 3);
    CHECK(nmse(h.taps, r.estimate) < 1e-20);
    CHECK(OmpStop::defaults(64, y).max_sparsity == 6);
}

TEST_CASE("identity pilots recover any channel exactly")
{
    const auto h = generate_sparse_channel(32, 3, 4.0, 2);
    const auto phi = PilotMatrix::generate(32, 32, PilotScheme::identity, 0);
    const auto r = omp_reconstruct(measure(h.taps, phi, 0.0, 0), phi, {3, 0.0});
    CHECK(nmse(h.taps, r.estimate) < 1e-28);
}

TEST_CASE("nmse")
{
    const std::vector<cplx> h{{1.0, 0.0}, {0.0, 1.0}};
    CHECK(nmse(h, h) == 0.0);
    CHECK(nmse(h, std::vector<cplx>(2)) == doctest::Approx(1.0));
    CHECK(nmse(h, std::vector<cplx>{{1.0, 0.0}, {0.0, 0.0}}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(nmse(h, std::vector<cplx>(3)), DimensionError);
}

TEST_CASE("median")
{
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}

TEST_CASE("pilot savings curve")
{
    const std::vector<std::size_t> ms{0, 6, 12, 20};
    const auto rows = pilot_savings_curve(64, 3, ms, 200, 42);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].median_nmse == 1.0);
    CHECK(rows[0].exact_fraction == 0.0);
    CHECK(rows[3].exact_fraction == 1.0);
    CHECK(rows[1].median_nmse >= rows[2].median_nmse);

    // a row depends on (seed, m) only, not on the rest of the list
    const auto again = pilot_savings_curve(64, 3, std::vector<std::size_t>{12}, 200, 42);
    CHECK(again[0].median_nmse == rows[2].median_nmse);
}

TEST_CASE("recovery rate at four measurements per tap")
{
    // four pilots per non-zero tap is comfortably exact at s = 4, slightly short of it at s = 3
    const auto s4 = pilot_savings_curve(64, 4, std::vector<std::size_t>{16}, 500, 1);
    CHECK(s4[0].exact_fraction >= 0.99);
    const auto s3 = pilot_savings_curve(64, 3, std::vector<std::size_t>{12}, 500, 1);
    CHECK(s3[0].exact_fraction >= 0.95);
    CHECK(s3[0].exact_fraction < 1.0);
}
