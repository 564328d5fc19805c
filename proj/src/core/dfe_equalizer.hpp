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

#ifndef HYDROLINK_CORE_DFE_EQUALIZER_HPP
#define HYDROLINK_CORE_DFE_EQUALIZER_HPP

#include "sparse_estimation.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Symbol-spaced LMS decision feedback equalizer for BPSK.
//
// At step k the feed-forward filter sees r[k], r[k-1], ..., r[k-n_ff+1] and the
// output estimates the symbol s[k - delay]. The feedback filter holds the
// n_fb symbols decided before it, newest first:
//
//   z = sum_i ff[i] r[k-i] - sum_j fb[j] d[k-delay-1-j]

namespace hydrolink::dfe {

using cplx = std::complex<double>;

enum class Mode { training, decision_directed };

struct DfeConfig {
    std::size_t n_ff = 12;
    std::size_t n_fb = 8;
    double mu = 0.01;

    void validate() const;
};

struct StepResult {
    cplx output;
    double decision = 0.0;  // +1 / -1
    cplx error;             // reference - output
};

class DfeState {
public:
    DfeState(const DfeConfig& config, std::vector<cplx> ff, std::vector<cplx> fb, std::size_t delay);

    /// Small seeded random taps, decision delay n_ff - 1.
    static DfeState cold_start(const DfeConfig& config, std::uint64_t seed);

    /// Taps from a channel estimate: the feed-forward filter is the least-squares
    /// (MMSE when noise_var > 0) solution that maps the estimated response onto a
    /// unit cursor, the feedback filter carries the resulting post-cursor taps, and
    /// the decision delay is the one with the lowest residual cost.
    static DfeState from_channel_estimate(const DfeConfig& config, std::span<const cplx> estimate, double noise_var = 0.0);

    /// Push a received sample without producing a decision (pipeline fill).
    void prime(cplx input);

    /// One output / decision / LMS update. Training mode requires `desired`.
    StepResult step(cplx input, std::optional<double> desired = std::nullopt);

    Mode mode() const { return mode_; }
    void set_mode(Mode m) { mode_ = m; }

    std::span<const cplx> ff_taps() const { return ff_; }
    std::span<const cplx> fb_taps() const { return fb_; }
    double step_mu() const { return mu_; }
    std::size_t decision_delay() const { return delay_; }

private:
    std::vector<cplx> ff_;
    std::vector<cplx> fb_;
    double mu_;
    std::size_t delay_;
    Mode mode_ = Mode::training;
    std::vector<cplx> window_;   // newest first
    std::vector<double> past_;   // newest first
};

/// Shifts the response so its first non-zero tap sits at index 0 (receiver
/// synchronised to the first arrival); length is preserved.
std::vector<cplx> align_to_first_arrival(std::span<const cplx> taps);

struct BerSimOptions {
    DfeConfig dfe;
    std::optional<std::vector<cplx>> channel_estimate;  // empty: cold start
    double estimate_noise_var = 0.0;
};

struct BerResult {
    double ber = 0.0;
    std::size_t errors = 0;
    std::size_t symbols = 0;
    std::vector<double> training_mse;  // |e|^2 per training symbol
    std::size_t decision_delay = 0;
};

/// BPSK through `channel` plus circular AWGN of variance 10^(-snr/10)
/// (snr_db = +inf is noiseless), train on n_train symbols, then run
/// decision-directed on n_data scored symbols.
BerResult ber_sim(std::span<const cplx> channel, double snr_db, std::size_t n_train, std::size_t n_data,
                  const BerSimOptions& options, std::uint64_t seed);

/// Q(sqrt(2 snr)) for BPSK over AWGN.
double bpsk_awgn_ber(double snr_db);

struct ConvergenceRule {
    double mse_threshold = 0.05;
    std::size_t window = 100;
};

/// First k >= window with mean(mse[k - window, k)) <= threshold.
std::optional<std::size_t> symbols_to_reach(std::span<const double> mse, const ConvergenceRule& rule);

struct InitComparisonOptions {
    std::size_t channel_length = 30;
    std::size_t sparse_taps = 3;
    double decay_taps = 10.0;
    double snr_db = 15.0;
    std::size_t pilots = 15;
    std::size_t n_train = 3000;
    std::size_t n_data = 1000;
    DfeConfig dfe{16, 30, 0.01};
    ConvergenceRule rule;
    std::size_t runs = 20;
};

struct InitComparisonRun {
    std::size_t cold_symbols = 0;  // n_train when not reached
    std::size_t cs_symbols = 0;
    bool cold_reached = false;
    bool cs_reached = false;
    double estimate_nmse = 0.0;
    double cold_ber = 0.0;
    double cs_ber = 0.0;
};

struct InitComparison {
    std::vector<InitComparisonRun> runs;
    double median_cold_symbols = 0.0;
    double median_cs_symbols = 0.0;
    double reduction = 0.0;  // 1 - median_cs / median_cold
    std::vector<double> cold_mse;  // per training symbol, mean over runs
    std::vector<double> cs_mse;
};

/// Paired cold-start vs channel-estimate-initialised training on seeded sparse
/// channels: both equalizers see the same symbols and noise in each run.
InitComparison compare_initialization(const InitComparisonOptions& options, std::uint64_t seed);

} // namespace hydrolink::dfe

#endif
