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

#ifndef HYDROLINK_CORE_SPARSE_ESTIMATION_HPP
#define HYDROLINK_CORE_SPARSE_ESTIMATION_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hydrolink::cs {

using cplx = std::complex<double>;

/// Largest support allowed for an n-tap channel (10 % of the taps).
std::size_t sparsity_budget(std::size_t n);

struct SparseChannel {
    std::vector<cplx> taps;            // dense impulse response, unit energy
    std::vector<std::size_t> support;  // ascending
    std::uint64_t seed = 0;

    std::size_t length() const { return taps.size(); }
};

struct SparsityReport {
    std::size_t nonzero_taps = 0;
    std::size_t budget = 0;              // floor(0.10 n)
    double top_energy_fraction = 0.0;    // energy held by the `budget` strongest taps
    bool ok = false;                     // nonzero <= budget and fraction >= 0.85
};

/// Checks the "few taps carry most of the energy" contract on any dense response.
SparsityReport check_sparsity(std::span<const cplx> taps);

/// Support drawn uniformly without replacement; tap power decays as exp(-index / decay_taps)
/// (pass infinity for a flat profile). Normalised to unit energy.
SparseChannel generate_sparse_channel(std::size_t n, std::size_t s_taps, double decay_taps, std::uint64_t seed);

enum class PilotScheme { gaussian, partial_fourier, identity };

/// m x n measurement operator with unit-energy columns.
class PilotMatrix {
public:
    static PilotMatrix generate(std::size_t m, std::size_t n, PilotScheme scheme, std::uint64_t seed);

    std::size_t rows() const { return static_cast<std::size_t>(phi_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(phi_.cols()); }
    PilotScheme scheme() const { return scheme_; }
    std::uint64_t seed() const { return seed_; }
    const Eigen::MatrixXcd& matrix() const { return phi_; }

private:
    PilotMatrix(Eigen::MatrixXcd phi, PilotScheme scheme, std::uint64_t seed)
        : phi_(std::move(phi)), scheme_(scheme), seed_(seed)
    {
    }

    Eigen::MatrixXcd phi_;
    PilotScheme scheme_;
    std::uint64_t seed_;
};

/// y = phi h + w, w circular complex Gaussian with E|w_i|^2 = noise_std^2.
std::vector<cplx> measure(std::span<const cplx> h, const PilotMatrix& phi, double noise_std, std::uint64_t noise_seed);

struct OmpStop {
    std::size_t max_sparsity = 1;
    double residual_tol = 0.0;  // halt once ||r|| <= residual_tol

    /// max_sparsity = 10 % of n (at least 1), residual_tol = 1e-6 ||y||.
    static OmpStop defaults(std::size_t n, std::span<const cplx> y);
};

struct OmpResult {
    std::vector<cplx> estimate;
    std::vector<std::size_t> support;       // in selection order
    std::vector<double> residual_norms;     // index 0 is ||y||
    std::size_t iterations = 0;
    bool rank_deficient = false;
};

OmpResult omp_reconstruct(std::span<const cplx> y, const PilotMatrix& phi, const OmpStop& stop);

/// ||h - h_est||^2 / ||h||^2.
double nmse(std::span<const cplx> truth, std::span<const cplx> estimate);

struct PilotSavingsRow {
    std::size_t m = 0;
    double median_nmse = 0.0;
    double exact_fraction = 0.0;  // share of trials with NMSE < 1e-8
};

struct PilotSavingsOptions {
    double noise_std = 0.0;
    double decay_taps = 16.0;
    PilotScheme scheme = PilotScheme::gaussian;
};

std::vector<PilotSavingsRow> pilot_savings_curve(std::size_t n, std::size_t s, std::span<const std::size_t> m_list,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const PilotSavingsOptions& options = {});

double median(std::vector<double> values);

} // namespace hydrolink::cs

#endif
