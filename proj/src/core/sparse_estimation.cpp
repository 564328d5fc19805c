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

#include "sparse_estimation.hpp"

#include "error.hpp"
#include "seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace hydrolink::cs {

namespace {

cplx complex_normal(Rng& rng, std::normal_distribution<double>& normal)
{
    const double re = normal(rng);
    const double im = normal(rng);
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

double energy(std::span<const cplx> v)
{
    double e = 0.0;
    for (const cplx& x : v)
        e += std::norm(x);
    return e;
}

} // namespace

std::size_t sparsity_budget(std::size_t n) { return n / 10; }

SparsityReport check_sparsity(std::span<const cplx> taps)
{
    SparsityReport r;
    r.budget = sparsity_budget(taps.size());
    std::vector<double> power(taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) {
        power[i] = std::norm(taps[i]);
        if (power[i] > 0.0)
            ++r.nonzero_taps;
    }
    const double total = std::accumulate(power.begin(), power.end(), 0.0);
    if (total <= 0.0)
        return r;
    std::sort(power.begin(), power.end(), std::greater<>());
    r.top_energy_fraction = std::accumulate(power.begin(), power.begin() + static_cast<std::ptrdiff_t>(r.budget), 0.0) / total;
    r.ok = r.nonzero_taps <= r.budget && r.top_energy_fraction >= 0.85;
    return r;
}

SparseChannel generate_sparse_channel(std::size_t n, std::size_t s_taps, double decay_taps, std::uint64_t seed)
{
    if (s_taps < 1 || s_taps > sparsity_budget(n))
        throw DomainError("sparse channel needs 1 <= taps <= 10% of length; got " + std::to_string(s_taps) + " of " +
                          std::to_string(n));
    if (!(decay_taps > 0.0))
        throw DomainError("decay_taps must be positive (infinity for a flat profile)");

    Rng rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < s_taps; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    SparseChannel ch;
    ch.seed = seed;
    ch.support.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s_taps));
    std::sort(ch.support.begin(), ch.support.end());
    ch.taps.assign(n, cplx{});

    std::normal_distribution<double> normal;
    for (std::size_t k : ch.support) {
        const double amplitude = std::exp(-0.5 * static_cast<double>(k) / decay_taps);
        ch.taps[k] = amplitude * complex_normal(rng, normal);
    }
    const double norm = std::sqrt(energy(ch.taps));
    for (cplx& t : ch.taps)
        t /= norm;
    return ch;
}

PilotMatrix PilotMatrix::generate(std::size_t m, std::size_t n, PilotScheme scheme, std::uint64_t seed)
{
    if (n == 0)
        throw DimensionError("pilot matrix needs at least one column");
    if (m > n)
        throw DimensionError("pilot matrix must not have more rows than columns");

    Rng rng(seed);
    Eigen::MatrixXcd phi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    switch (scheme) {
    case PilotScheme::gaussian: {
        std::normal_distribution<double> normal;
        for (Eigen::Index j = 0; j < phi.cols(); ++j)
            for (Eigen::Index i = 0; i < phi.rows(); ++i)
                phi(i, j) = complex_normal(rng, normal);
        break;
    }
    case PilotScheme::partial_fourier: {
        std::vector<std::size_t> rows(n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        for (std::size_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(rows[i], rows[pick(rng)]);
        }
        std::sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double angle = -2.0 * std::numbers::pi * static_cast<double>(rows[i] * j % n) / static_cast<double>(n);
                phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::polar(1.0, angle);
            }
        break;
    }
    case PilotScheme::identity:
        if (m != n)
            throw DimensionError("identity pilots need a square operator");
        phi.setIdentity();
        break;
    }

    if (m > 0)
        for (Eigen::Index j = 0; j < phi.cols(); ++j)
            phi.col(j).normalize();
    return PilotMatrix(std::move(phi), scheme, seed);
}

std::vector<cplx> measure(std::span<const cplx> h, const PilotMatrix& phi, double noise_std, std::uint64_t noise_seed)
{
    if (h.size() != phi.cols())
        throw DimensionError("measure: channel length " + std::to_string(h.size()) + " does not match pilot columns " +
                             std::to_string(phi.cols()));
    if (!std::isfinite(noise_std) || noise_std < 0.0)
        throw DomainError("noise_std must be finite and non-negative");

    const Eigen::Map<const Eigen::VectorXcd> hv(h.data(), static_cast<Eigen::Index>(h.size()));
    const Eigen::VectorXcd clean = phi.matrix() * hv;
    std::vector<cplx> y(clean.data(), clean.data() + clean.size());
    if (noise_std > 0.0) {
        Rng rng(noise_seed);
        std::normal_distribution<double> normal;
        for (cplx& v : y)
            v += noise_std * complex_normal(rng, normal);
    }
    return y;
}

OmpStop OmpStop::defaults(std::size_t n, std::span<const cplx> y)
{
    return {std::max<std::size_t>(1, sparsity_budget(n)), 1e-6 * std::sqrt(energy(y))};
}

OmpResult omp_reconstruct(std::span<const cplx> y, const PilotMatrix& phi, const OmpStop& stop)
{
    if (y.size() != phi.rows())
        throw DimensionError("omp: observation length does not match pilot rows");
    if (stop.max_sparsity < 1)
        throw ConfigError("omp: max_sparsity must be at least 1");
    if (!std::isfinite(stop.residual_tol) || stop.residual_tol < 0.0)
        throw ConfigError("omp: residual_tol must be finite and non-negative");

    const Eigen::MatrixXcd& A = phi.matrix();
    const Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(y.size()));

    OmpResult out;
    out.estimate.assign(phi.cols(), cplx{});
    Eigen::VectorXcd residual = yv;
    Eigen::VectorXcd coeffs;
    out.residual_norms.push_back(residual.norm());

    std::vector<bool> used(phi.cols(), false);
    while (out.support.size() < stop.max_sparsity && residual.norm() > stop.residual_tol && y.size() > 0) {
        const Eigen::VectorXcd corr = A.adjoint() * residual;
        Eigen::Index best = -1;
        double best_mag = -1.0;
        for (Eigen::Index j = 0; j < corr.size(); ++j) {
            if (used[static_cast<std::size_t>(j)])
                continue;
            const double mag = std::abs(corr(j));
            if (mag > best_mag) {
                best_mag = mag;
                best = j;
            }
        }
        if (best < 0 || best_mag <= 1e-14 * residual.norm())
            break;

        std::vector<std::size_t> trial = out.support;
        trial.push_back(static_cast<std::size_t>(best));
        Eigen::MatrixXcd sub(A.rows(), static_cast<Eigen::Index>(trial.size()));
        for (std::size_t k = 0; k < trial.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = A.col(static_cast<Eigen::Index>(trial[k]));
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sub);
        if (qr.rank() < static_cast<Eigen::Index>(trial.size())) {
            out.rank_deficient = true;
            break;
        }

        used[static_cast<std::size_t>(best)] = true;
        out.support = std::move(trial);
        coeffs = qr.solve(yv);
        residual = yv - sub * coeffs;
        out.residual_norms.push_back(residual.norm());
        ++out.iterations;
    }

    for (std::size_t k = 0; k < out.support.size(); ++k)
        out.estimate[out.support[k]] = coeffs(static_cast<Eigen::Index>(k));
    return out;
}

double nmse(std::span<const cplx> truth, std::span<const cplx> estimate)
{
    if (truth.size() != estimate.size())
        throw DimensionError("nmse: length mismatch");
    const double ref = energy(truth);
    if (!(ref > 0.0))
        throw DomainError("nmse: reference channel has zero energy");
    double err = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        err += std::norm(truth[i] - estimate[i]);
    return err / ref;
}

double median(std::vector<double> values)
{
    if (values.empty())
        return std::nan("");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1)
        return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

std::vector<PilotSavingsRow> pilot_savings_curve(std::size_t n, std::size_t s, std::span<const std::size_t> m_list,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const PilotSavingsOptions& options)
{
    if (!std::is_sorted(m_list.begin(), m_list.end()))
        throw DomainError("pilot_savings_curve: m_list must be ascending");
    if (trials == 0)
        throw DomainError("pilot_savings_curve: need at least one trial");

    std::vector<std::vector<double>> per_m(m_list.size());
    for (std::size_t t = 0; t < trials; ++t) {
        const SparseChannel h = generate_sparse_channel(n, s, options.decay_taps, derive_seed(seed, "cs.channel", t));
        for (std::size_t k = 0; k < m_list.size(); ++k) {
            const std::size_t m = m_list[k];
            if (m == 0) {
                per_m[k].push_back(1.0);
                continue;
            }
            const std::uint64_t trial_seed = derive_seed(seed, "cs.trial", t);
            const PilotMatrix phi = PilotMatrix::generate(m, n, options.scheme, derive_seed(trial_seed, "pilot", m));
            const std::vector<cplx> y = measure(h.taps, phi, options.noise_std, derive_seed(trial_seed, "noise", m));
            const OmpResult est = omp_reconstruct(y, phi, OmpStop::defaults(n, y));
            per_m[k].push_back(nmse(h.taps, est.estimate));
        }
    }

    std::vector<PilotSavingsRow> rows;
    for (std::size_t k = 0; k < m_list.size(); ++k) {
        const auto exact = std::count_if(per_m[k].begin(), per_m[k].end(), [](double e) { return e < 1e-8; });
        rows.push_back({m_list[k], median(per_m[k]), static_cast<double>(exact) / static_cast<double>(trials)});
    }
    return rows;
}

} // namespace hydrolink::cs
