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

#include "dfe_equalizer.hpp"
#include "error.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace hydrolink;
using namespace hydrolink::dfe;

TEST_CASE("config validation")
{
    CHECK_NOTHROW(DfeConfig{}.validate());
    CHECK_THROWS_AS((DfeConfig{0, 8, 0.01}).validate(), DomainError);
    CHECK_THROWS_AS((DfeConfig{12, 8, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS((DfeConfig{12, 8, 1.0}).validate(), DomainError);
}

TEST_CASE("single-tap LMS follows the closed-form trajectory")
{
    // r = s, one tap starting at 0: 1 - w_k = (1 - mu)^k, so |e_k| = (1 - mu)^k.
    const double mu = 0.01;
    DfeState eq(DfeConfig{1, 0, mu}, {cplx(0.0)}, {}, 0);
    std::size_t first_below = 0;
    for (std::size_t k = 0; k < 1000; ++k) {
        const double s = (k % 3 == 0) ? -1.0 : 1.0;
        const StepResult r = eq.step(s, s);
        const double expected = std::pow(1.0 - mu, static_cast<double>(k));
        REQUIRE(std::abs(r.error) == doctest::Approx(expected).epsilon(1e-9));
        if (first_below == 0 && std::abs(r.error) < 1e-3)
            first_below = k;
    }
    // ceil(ln 1e-3 / ln 0.99) = 688
    CHECK(first_below == 688);
}

TEST_CASE("cold start")
{
    const DfeState a = DfeState::cold_start(DfeConfig{12, 8, 0.01}, 3);
    const DfeState b = DfeState::cold_start(DfeConfig{12, 8, 0.01}, 3);
    CHECK(a.decision_delay() == 11);
    CHECK(a.ff_taps().size() == 12);
    CHECK(a.fb_taps().size() == 8);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(a.ff_taps()[i] == b.ff_taps()[i]);
        CHECK(std::abs(a.ff_taps()[i]) < 0.01);
    }
    for (const auto& t : a.fb_taps())
        CHECK(std::abs(t) < 0.01);
}

TEST_CASE("initialisation from an ISI-free estimate")
{
    const std::vector<cplx> h{1.0};
    const DfeState eq = DfeState::from_channel_estimate(DfeConfig{4, 2, 0.01}, h);
    CHECK(eq.decision_delay() == 0);
    CHECK(std::abs(eq.ff_taps()[0] - 1.0) < 1e-12);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(std::abs(eq.ff_taps()[i]) < 1e-12);
    for (const auto& t : eq.fb_taps())
        CHECK(std::abs(t) < 1e-12);
}

TEST_CASE("minimum-phase two-tap channel: feedback cancels the post-cursor")
{
    const std::vector<cplx> h{1.0, 0.5};
    const DfeState eq = DfeState::from_channel_estimate(DfeConfig{4, 2, 0.01}, h);
    CHECK(eq.decision_delay() == 0);
    CHECK(std::abs(eq.ff_taps()[0] - 1.0) < 1e-9);
    CHECK(std::abs(eq.fb_taps()[0] - 0.5) < 1e-9);
    CHECK(std::abs(eq.fb_taps()[1]) < 1e-9);
}

TEST_CASE("a channel estimate gives error-free data on a noiseless ISI channel")
{
    const std::vector<cplx> h{{0.8, 0.1}, {0.0, 0.0}, {0.0, 0.0}, {-0.45, 0.2}, {0.0, 0.0}, {0.25, 0.0}};
    BerSimOptions opts;
    opts.dfe = DfeConfig{8, 8, 0.01};
    opts.channel_estimate = h;
    const BerResult r = ber_sim(h, std::numeric_limits<double>::infinity(), 200, 5000, opts, 9);
    CHECK(r.errors == 0);
    CHECK(r.symbols == 5000);
    CHECK(r.training_mse.size() == 200);
    CHECK(r.training_mse.front() < 1e-12);
}

TEST_CASE("training mode needs the desired symbol")
{
    DfeState eq = DfeState::cold_start(DfeConfig{}, 1);
    CHECK_THROWS_AS(eq.step(1.0), DomainError);
    eq.set_mode(Mode::decision_directed);
    const StepResult r = eq.step(1.0);
    CHECK(std::abs(r.decision) == 1.0);
}

TEST_CASE("ber_sim is seeded and checks its sizes")
{
    const std::vector<cplx> h{1.0, 0.3};
    BerSimOptions opts;
    const BerResult a = ber_sim(h, 6.0, 500, 2000, opts, 4);
    const BerResult b = ber_sim(h, 6.0, 500, 2000, opts, 4);
    CHECK(a.errors == b.errors);
    CHECK(a.training_mse == b.training_mse);
    CHECK_THROWS_AS(ber_sim(h, 6.0, 500, 999, opts, 4), DomainError);
    CHECK_THROWS_AS(ber_sim(std::vector<cplx>{}, 6.0, 500, 2000, opts, 4), DimensionError);
}

TEST_CASE("awgn reference")
{
    CHECK(bpsk_awgn_ber(8.0) == doctest::Approx(1.9090777407599314e-4).epsilon(1e-10));
    CHECK(bpsk_awgn_ber(0.0) == doctest::Approx(0.07864960352514257).epsilon(1e-10));
}

TEST_CASE("ISI-free BER near theory at moderate SNR")
{
    BerSimOptions opts;
    opts.dfe = DfeConfig{12, 8, 0.001};
    const BerResult r = ber_sim(std::vector<cplx>{1.0}, 6.0, 2000, 200000, opts, 17);
    const double p = bpsk_awgn_ber(6.0);
    const double sigma = std::sqrt(p * (1.0 - p) / 200000.0);
    CHECK(std::abs(r.ber - p) < 4.0 * sigma);
}

TEST_CASE("symbols_to_reach")
{
    const std::vector<double> flat(500, 0.01);
    CHECK(symbols_to_reach(flat, {0.05, 100}) == std::optional<std::size_t>(100));
    const std::vector<double> high(500, 1.0);
    CHECK_FALSE(symbols_to_reach(high, {0.05, 100}).has_value());
    std::vector<double> step(500, 1.0);
    for (std::size_t i = 200; i < 500; ++i)
        step[i] = 0.0;
    // window [k-100, k) needs at most 5 ones: k - 100 >= 195
    CHECK(symbols_to_reach(step, {0.05, 100}) == std::optional<std::size_t>(295));
}

TEST_CASE("align to first arrival")
{
    const std::vector<cplx> h{0.0, 0.0, 0.5, 0.0, 0.2};
    const auto a = align_to_first_arrival(h);
    REQUIRE(a.size() == 5);
    CHECK(a[0] == cplx(0.5));
    CHECK(a[2] == cplx(0.2));
    CHECK(a[4] == cplx(0.0));
}

TEST_CASE("channel-estimate start converges sooner than cold start")
{
    InitComparisonOptions o;
    o.runs = 6;
    const InitComparison c = compare_initialization(o, 5);
    CHECK(c.runs.size() == 6);
    CHECK(c.median_cs_symbols < c.median_cold_symbols);
    CHECK(c.cold_mse.size() == o.n_train);
    CHECK(c.cs_mse.front() < c.cold_mse.front());
}
