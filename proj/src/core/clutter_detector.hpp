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

#ifndef HYDROLINK_CORE_CLUTTER_DETECTOR_HPP
#define HYDROLINK_CORE_CLUTTER_DETECTOR_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hydrolink::clutter {

using cplxf = std::complex<float>;

enum class Polarization : std::uint8_t { hh = 0, hv = 1, vh = 2, vv = 3 };

inline constexpr std::size_t kDefaultCells = 14;
inline constexpr std::size_t kDefaultPulses = std::size_t{1} << 17;

/// Range-time clutter samples, stored cell-major (all pulses of cell 0 first).
class ClutterFrame {
public:
    ClutterFrame(std::size_t cells, std::size_t pulses, std::vector<cplxf> samples, double shape_nu = 0.0,
                 std::uint64_t seed = 0, Polarization pol = Polarization::hh, bool has_target = false);

    std::size_t cells() const { return cells_; }
    std::size_t pulses() const { return pulses_; }
    double shape_nu() const { return shape_nu_; }
    std::uint64_t seed() const { return seed_; }
    Polarization polarization() const { return pol_; }
    bool has_target() const { return has_target_; }

    std::span<const cplxf> samples() const { return samples_; }
    std::span<const cplxf> cell(std::size_t c) const;

    double mean_power() const;
    double cell_mean_power(std::size_t c) const;
    /// Mean |x| of every cell.
    std::vector<double> cell_mean_amplitudes() const;

    /// Copy with every sample multiplied by `factor`.
    ClutterFrame scaled(std::complex<float> factor) const;

private:
    friend ClutterFrame inject_target(const ClutterFrame&, std::size_t, double, std::uint64_t, double);

    std::size_t cells_;
    std::size_t pulses_;
    std::vector<cplxf> samples_;
    double shape_nu_;
    std::uint64_t seed_;
    Polarization pol_;
    bool has_target_;
};

/// Compound-Gaussian clutter: per-cell texture tau ~ Gamma(nu, 1/nu) times
/// unit complex Gaussian speckle, so amplitudes are K-distributed. nu = +inf
/// gives homogeneous Rayleigh clutter. The frame is scaled to unit mean power.
ClutterFrame gen_k_clutter(std::size_t cells, std::size_t pulses, double nu, std::uint64_t seed,
                           Polarization pol = Polarization::hh);

/// Adds A exp(j(phi + 2 pi doppler k)) to one cell, A^2 = 10^(scr/10) relative to
/// unit clutter power, phi uniform from `seed`. scr_db = -inf leaves the frame unchanged.
ClutterFrame inject_target(const ClutterFrame& frame, std::size_t cell, double scr_db, std::uint64_t seed,
                           double doppler = 0.0);

/// The n_ref nearest cells outside the guard band, split evenly across both
/// sides and topped up from the other side near the frame edges.
std::vector<std::size_t> reference_cells(std::size_t cells, std::size_t cut, std::size_t guard, std::size_t n_ref);

/// Relative average amplitude: mean |x| on the CUT over mean |x| on the reference cells.
double raa_feature(const ClutterFrame& frame, std::size_t cut, std::size_t guard, std::size_t n_ref);
double raa_from_cell_amplitudes(std::span<const double> cell_amplitudes, std::size_t cut, std::size_t guard,
                                std::size_t n_ref);

struct DetectorModel {
    double threshold_theta = 0.0;
    double target_pfa = 0.0;
    std::size_t guard_cells = 1;
    std::size_t reference_cells = 8;
    std::size_t calibration_samples = 0;
};

/// ceil(10 / pfa): the fewest clutter-only samples a calibration accepts.
std::size_t required_calibration_samples(double target_pfa);

/// Streaming collection of clutter-only RAA values.
class ThresholdCalibrator {
public:
    ThresholdCalibrator(std::size_t guard_cells = 1, std::size_t reference_cells = 8);

    /// One RAA sample per cell that has a full reference window.
    void add_frame(const ClutterFrame& frame);
    void add_sample(double raa) { samples_.push_back(raa); }
    std::size_t size() const { return samples_.size(); }

    /// threshold = empirical (1 - pfa) quantile, i.e. the ceil((1 - pfa) N)-th order statistic.
    DetectorModel finish(double target_pfa) const;

private:
    std::size_t guard_;
    std::size_t n_ref_;
    std::vector<double> samples_;
};

DetectorModel calibrate_threshold(std::span<const ClutterFrame> clutter_frames, double target_pfa,
                                  std::size_t guard_cells = 1, std::size_t reference_cells = 8);

/// raa > threshold; a tie is "no target".
bool detect(const ClutterFrame& frame, std::size_t cut, const DetectorModel& model);

struct RocOptions {
    std::size_t cells = kDefaultCells;
    std::size_t pulses = 64;
    std::size_t cut = kDefaultCells / 2;
    std::size_t guard_cells = 1;
    std::size_t reference_cells = 8;
    std::size_t calibration_samples = 0;  // 0: ceil(1000 / pfa)
};

struct RocRow {
    double scr_db = 0.0;
    double pd = 0.0;
    double pfa = 0.0;
};

struct RocResult {
    DetectorModel model;
    std::vector<RocRow> rows;
    std::size_t trials = 0;
    std::size_t false_alarms = 0;
};

/// Fresh calibration, then `trials` clutter-only frames for Pfa and `trials`
/// target frames per SCR for Pd. Target trials reuse the same clutter and
/// phase across SCR values.
RocResult roc_eval(double nu, std::span<const double> scr_list, double target_pfa, std::size_t trials,
                   std::uint64_t seed, const RocOptions& options = {});

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double p) const { return p >= lo && p <= hi; }
};

/// Clopper-Pearson 95 % interval for k successes in n trials.
Interval binomial_ci95(std::size_t k, std::size_t n);

// Binary frame file: 16-byte little-endian header
//   u32 magic "HLCF", u32 cells, u32 pulses, u32 flags (bits 0-1 polarization, bit 2 target present)
// followed by cells*pulses interleaved float32 (re, im), cell-major.
inline constexpr std::uint32_t kFrameMagic = 0x46434C48u;  // "HLCF" as bytes
inline constexpr std::size_t kFrameHeaderBytes = 16;

std::vector<std::uint8_t> encode_frame(const ClutterFrame& frame);
ClutterFrame decode_frame(std::span<const std::uint8_t> bytes);
void write_frame(const ClutterFrame& frame, const std::filesystem::path& path);
ClutterFrame read_frame(const std::filesystem::path& path);

} // namespace hydrolink::clutter

#endif
