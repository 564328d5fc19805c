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
#include "seeding.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace hydrolink::dfe {

void DfeConfig::validate() const
{
    if (n_ff < 1)
        throw DomainError("DFE needs at least one feed-forward tap");
    if (!(mu > 0.0 && mu < 1.0))
        throw DomainError("DFE step size mu must lie in (0, 1), got " + std::to_string(mu));
}

DfeState::DfeState(const DfeConfig& config, std::vector<cplx> ff, std::vector<cplx> fb, std::size_t delay)
    : ff_(std::move(ff)), fb_(std::move(fb)), mu_(config.mu), delay_(delay)
{
    config.validate();
    if (ff_.size() != config.n_ff || fb_.size() != config.n_fb)
        throw DimensionError("DFE tap vectors do not match the configured lengths");
    window_.assign(ff_.size(), cplx{});
    past_.assign(fb_.size(), 0.0);
}

DfeState DfeState::cold_start(const DfeConfig& config, std::uint64_t seed)
{
    config.validate();
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1e-3);
    std::vector<cplx> ff(config.n_ff);
    std::vector<cplx> fb(config.n_fb);
    for (cplx& t : ff)
        t = {normal(rng), normal(rng)};
    for (cplx& t : fb)
        t = {normal(rng), normal(rng)};
    return DfeState(config, std::move(ff), std::move(fb), config.n_ff - 1);
}

DfeState DfeState::from_channel_estimate(const DfeConfig& config, std::span<const cplx> estimate, double noise_var)
{
    config.validate();
    if (!std::isfinite(noise_var) || noise_var < 0.0)
        throw DomainError("noise_var must be finite and non-negative");
    std::size_t len = estimate.size();
    while (len > 0 && estimate[len - 1] == cplx{})
        --len;
    if (len == 0)
        throw DomainError("channel estimate has no energy");

    using Eigen::Index;
    const Index n_ff = static_cast<Index>(config.n_ff);
    const Index n_fb = static_cast<Index>(config.n_fb);
    const Index conv_len = n_ff + static_cast<Index>(len) - 1;

    // Column i is the estimated response delayed by i samples.
    Eigen::MatrixXcd conv = Eigen::MatrixXcd::Zero(conv_len, n_ff);
    for (Index i = 0; i < n_ff; ++i)
        for (std::size_t j = 0; j < len; ++j)
            conv(i + static_cast<Index>(j), i) = estimate[j];

    double best_cost = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd best_w;
    Index best_delay = 0;
    for (Index delay = 0; delay < conv_len; ++delay) {
        std::vector<Index> rows;
        Index target_row = -1;
        for (Index m = 0; m < conv_len; ++m) {
            if (m > delay && m <= delay + n_fb)
                continue;  // cancelled by the feedback filter
            if (m == delay)
                target_row = static_cast<Index>(rows.size());
            rows.push_back(m);
        }
        const Index extra = noise_var > 0.0 ? n_ff : 0;
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Index>(rows.size()) + extra, n_ff);
        for (std::size_t r = 0; r < rows.size(); ++r)
            a.row(static_cast<Index>(r)) = conv.row(rows[r]);
        if (extra > 0)
            a.bottomRows(extra) = std::sqrt(noise_var) * Eigen::MatrixXcd::Identity(n_ff, n_ff);
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(a.rows());
        target(target_row) = 1.0;

        const Eigen::VectorXcd w = a.colPivHouseholderQr().solve(target);
        const double cost = (a * w - target).squaredNorm();
        if (cost < best_cost - 1e-12) {
            best_cost = cost;
            best_w = w;
            best_delay = delay;
        }
    }

    const Eigen::VectorXcd combined = conv * best_w;
    std::vector<cplx> ff(best_w.data(), best_w.data() + best_w.size());
    std::vector<cplx> fb(config.n_fb, cplx{});
    for (Index j = 0; j < n_fb; ++j) {
        const Index m = best_delay + 1 + j;
        if (m < conv_len)
            fb[static_cast<std::size_t>(j)] = combined(m);
    }
    return DfeState(config, std::move(ff), std::move(fb), static_cast<std::size_t>(best_delay));
}

void DfeState::prime(cplx input)
{
    std::rotate(window_.rbegin(), window_.rbegin() + 1, window_.rend());
    window_.front() = input;
}

StepResult DfeState::step(cplx input, std::optional<double> desired)
{
    if (mode_ == Mode::training && !desired)
        throw DomainError("DFE training step requires the desired symbol");
    prime(input);

    cplx z{};
    for (std::size_t i = 0; i < ff_.size(); ++i)
        z += ff_[i] * window_[i];
    for (std::size_t j = 0; j < fb_.size(); ++j)
        z -= fb_[j] * past_[j];

    StepResult res;
    res.output = z;
    res.decision = z.real() >= 0.0 ? 1.0 : -1.0;
    const double reference = desired.value_or(res.decision);
    res.error = reference - z;

    for (std::size_t i = 0; i < ff_.size(); ++i)
        ff_[i] += mu_ * res.error * std::conj(window_[i]);
    for (std::size_t j = 0; j < fb_.size(); ++j)
        fb_[j] -= mu_ * res.error * past_[j];

    if (!past_.empty()) {
        std::rotate(past_.rbegin(), past_.rbegin() + 1, past_.rend());
        past_.front() = reference;
    }
    return res;
}

std::vector<cplx> align_to_first_arrival(std::span<const cplx> taps)
{
    std::vector<cplx> out(taps.size(), cplx{});
    const auto first = std::find_if(taps.begin(), taps.end(), [](const cplx& t) { return t != cplx{}; });
    std::copy(first, taps.end(), out.begin());
    return out;
}

double bpsk_awgn_ber(double snr_db) { return 0.5 * std::erfc(std::sqrt(std::pow(10.0, snr_db / 10.0))); }

BerResult ber_sim(std::span<const cplx> channel, double snr_db, std::size_t n_train, std::size_t n_data,
                  const BerSimOptions& options, std::uint64_t seed)
{
    if (n_data < 1000)
        throw DomainError("ber_sim needs at least 1000 data symbols");
    if (channel.empty())
        throw DimensionError("ber_sim: empty channel");
    if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
        throw DomainError("ber_sim: snr_db must be a number or +inf");

    DfeState eq = options.channel_estimate
                      ? DfeState::from_channel_estimate(options.dfe, *options.channel_estimate, options.estimate_noise_var)
                      : DfeState::cold_start(options.dfe, derive_seed(seed, "dfe.cold"));
    if (n_train == 0)
        eq.set_mode(Mode::decision_directed);

    const std::size_t total = n_train + n_data;
    const std::size_t delay = eq.decision_delay();

    Rng symbol_rng(derive_seed(seed, "dfe.symbols"));
    std::vector<double> symbols(total + delay);
    for (double& s : symbols)
        s = (symbol_rng() & 1U) ? 1.0 : -1.0;

    Rng noise_rng(derive_seed(seed, "dfe.noise"));
    const double sigma = std::isinf(snr_db) ? 0.0 : std::sqrt(0.5 * std::pow(10.0, -snr_db / 10.0));
    std::normal_distribution<double> normal;

    BerResult res;
    res.decision_delay = delay;
    res.training_mse.reserve(n_train);
    for (std::size_t k = 0; k < total + delay; ++k) {
        cplx r{};
        for (std::size_t j = 0; j < channel.size() && j <= k; ++j)
            r += channel[j] * symbols[k - j];
        if (sigma > 0.0) {
            const double re = normal(noise_rng);
            const double im = normal(noise_rng);
            r += sigma * cplx{re, im};
        }

        if (k < delay) {
            eq.prime(r);
            continue;
        }
        const std::size_t idx = k - delay;
        if (idx == n_train)
            eq.set_mode(Mode::decision_directed);
        if (idx < n_train) {
            const StepResult s = eq.step(r, symbols[idx]);
            res.training_mse.push_back(std::norm(s.error));
        } else {
            const StepResult s = eq.step(r);
            ++res.symbols;
            if (s.decision != symbols[idx])
                ++res.errors;
        }
    }
    res.ber = static_cast<double>(res.errors) / static_cast<double>(res.symbols);
    return res;
}

std::optional<std::size_t> symbols_to_reach(std::span<const double> mse, const ConvergenceRule& rule)
{
    if (rule.window == 0)
        throw ConfigError("convergence window must be positive");
    if (mse.size() < rule.window)
        return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.window; ++i)
        sum += mse[i];
    const double limit = rule.mse_threshold * static_cast<double>(rule.window);
    for (std::size_t k = rule.window;; ++k) {
        if (sum <= limit)
            return k;
        if (k == mse.size())
            return std::nullopt;
        sum += mse[k] - mse[k - rule.window];
    }
}

InitComparison compare_initialization(const InitComparisonOptions& options, std::uint64_t seed)
{
    if (options.runs == 0)
        throw DomainError("compare_initialization needs at least one run");

    InitComparison out;
    std::vector<double> cold;
    std::vector<double> cs_init;
    out.cold_mse.assign(options.n_train, 0.0);
    out.cs_mse.assign(options.n_train, 0.0);
    for (std::size_t r = 0; r < options.runs; ++r) {
        const std::uint64_t run_seed = derive_seed(seed, "dfe.compare", r);
        const cs::SparseChannel generated = cs::generate_sparse_channel(
            options.channel_length, options.sparse_taps, options.decay_taps, derive_seed(run_seed, "channel"));
        const std::vector<cplx> channel = align_to_first_arrival(generated.taps);

        // Pilot-based compressed estimate of the synchronised channel. Pilot
        // symbols carry unit power like data symbols; with unit-norm pilot
        // columns that puts noise of variance N0 / m on each measurement.
        const double n0 = std::pow(10.0, -options.snr_db / 10.0);
        const double noise_std = std::sqrt(n0 / static_cast<double>(options.pilots));
        const cs::PilotMatrix phi = cs::PilotMatrix::generate(options.pilots, options.channel_length,
                                                              cs::PilotScheme::gaussian, derive_seed(run_seed, "pilots"));
        const std::vector<cplx> y = cs::measure(channel, phi, noise_std, derive_seed(run_seed, "pilot-noise"));
        const cs::OmpResult est = cs::omp_reconstruct(y, phi, cs::OmpStop::defaults(options.channel_length, y));
        const std::size_t dof = options.pilots > est.support.size() ? options.pilots - est.support.size() : 0;
        const double resid = est.residual_norms.back();
        // residual noise per measurement, rescaled to per-symbol N0
        const double noise_var =
            dof > 0 ? static_cast<double>(options.pilots) * resid * resid / static_cast<double>(dof) : 0.0;

        const std::uint64_t link_seed = derive_seed(run_seed, "link");
        BerSimOptions cold_opts{options.dfe, std::nullopt, 0.0};
        BerSimOptions cs_opts{options.dfe, est.estimate, noise_var};
        const BerResult a = ber_sim(channel, options.snr_db, options.n_train, options.n_data, cold_opts, link_seed);
        const BerResult b = ber_sim(channel, options.snr_db, options.n_train, options.n_data, cs_opts, link_seed);

        for (std::size_t k = 0; k < options.n_train; ++k) {
            out.cold_mse[k] += a.training_mse[k] / static_cast<double>(options.runs);
            out.cs_mse[k] += b.training_mse[k] / static_cast<double>(options.runs);
        }

        InitComparisonRun run;
        const auto ra = symbols_to_reach(a.training_mse, options.rule);
        const auto rb = symbols_to_reach(b.training_mse, options.rule);
        run.cold_reached = ra.has_value();
        run.cs_reached = rb.has_value();
        run.cold_symbols = ra.value_or(options.n_train);
        run.cs_symbols = rb.value_or(options.n_train);
        run.estimate_nmse = cs::nmse(channel, est.estimate);
        run.cold_ber = a.ber;
        run.cs_ber = b.ber;
        out.runs.push_back(run);
        cold.push_back(static_cast<double>(run.cold_symbols));
        cs_init.push_back(static_cast<double>(run.cs_symbols));
    }
    out.median_cold_symbols = cs::median(cold);
    out.median_cs_symbols = cs::median(cs_init);
    out.reduction = out.median_cold_symbols > 0.0 ? 1.0 - out.median_cs_symbols / out.median_cold_symbols : 0.0;
    return out;
}

} // namespace hydrolink::dfe
