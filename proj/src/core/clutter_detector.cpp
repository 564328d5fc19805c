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

#include "clutter_detector.hpp"

#include "error.hpp"
#include "seeding.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace hydrolink::clutter {

ClutterFrame::ClutterFrame(std::size_t cells, std::size_t pulses, std::vector<cplxf> samples, double shape_nu,
                           std::uint64_t seed, Polarization pol, bool has_target)
    : cells_(cells), pulses_(pulses), samples_(std::move(samples)), shape_nu_(shape_nu), seed_(seed), pol_(pol),
      has_target_(has_target)
{
    if (cells_ == 0 || pulses_ == 0)
        throw DimensionError("clutter frame needs at least one cell and one pulse");
    if (samples_.size() != cells_ * pulses_)
        throw DimensionError("clutter frame sample count does not match cells x pulses");
}

std::span<const cplxf> ClutterFrame::cell(std::size_t c) const
{
    if (c >= cells_)
        throw DomainError("cell index " + std::to_string(c) + " out of range");
    return std::span<const cplxf>(samples_).subspan(c * pulses_, pulses_);
}

double ClutterFrame::mean_power() const
{
    double sum = 0.0;
    for (const cplxf& x : samples_)
        sum += std::norm(std::complex<double>(x));
    return sum / static_cast<double>(samples_.size());
}

double ClutterFrame::cell_mean_power(std::size_t c) const
{
    double sum = 0.0;
    for (const cplxf& x : cell(c))
        sum += std::norm(std::complex<double>(x));
    return sum / static_cast<double>(pulses_);
}

std::vector<double> ClutterFrame::cell_mean_amplitudes() const
{
    std::vector<double> out(cells_);
    for (std::size_t c = 0; c < cells_; ++c) {
        double sum = 0.0;
        for (const cplxf& x : cell(c))
            sum += std::abs(std::complex<double>(x));
        out[c] = sum / static_cast<double>(pulses_);
    }
    return out;
}

ClutterFrame ClutterFrame::scaled(std::complex<float> factor) const
{
    std::vector<cplxf> s(samples_);
    for (cplxf& x : s)
        x *= factor;
    return ClutterFrame(cells_, pulses_, std::move(s), shape_nu_, seed_, pol_, has_target_);
}

ClutterFrame gen_k_clutter(std::size_t cells, std::size_t pulses, double nu, std::uint64_t seed, Polarization pol)
{
    if (std::isnan(nu) || nu <= 0.0)
        throw DomainError("K-clutter shape nu must be positive");
    if (cells == 0 || pulses == 0)
        throw DimensionError("clutter frame needs at least one cell and one pulse");

    Rng rng(seed);
    std::vector<double> texture(cells, 1.0);
    if (std::isfinite(nu)) {
        std::gamma_distribution<double> gamma(nu, 1.0 / nu);
        for (double& t : texture)
            t = gamma(rng);
    }

    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> raw(cells * pulses);
    double power = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double amp = std::sqrt(0.5 * texture[c]);
        for (std::size_t p = 0; p < pulses; ++p) {
            const double re = normal(rng);
            const double im = normal(rng);
            const std::complex<double> x{amp * re, amp * im};
            raw[c * pulses + p] = x;
            power += std::norm(x);
        }
    }
    power /= static_cast<double>(raw.size());

    const double scale = power > 0.0 ? 1.0 / std::sqrt(power) : 1.0;
    std::vector<cplxf> samples(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        samples[i] = cplxf(static_cast<float>(scale * raw[i].real()), static_cast<float>(scale * raw[i].imag()));
    return ClutterFrame(cells, pulses, std::move(samples), nu, seed, pol, false);
}

ClutterFrame inject_target(const ClutterFrame& frame, std::size_t cell, double scr_db, std::uint64_t seed, double doppler)
{
    if (cell >= frame.cells())
        throw DomainError("target cell " + std::to_string(cell) + " out of range");
    if (std::isnan(scr_db) || scr_db == std::numeric_limits<double>::infinity())
        throw DomainError("scr_db must be finite or -inf");
    detail::require_finite(doppler, "doppler");

    ClutterFrame out = frame;
    if (std::isinf(scr_db))
        return out;

    Rng rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    const double phase0 = uniform(rng);
    const double amplitude = std::sqrt(std::pow(10.0, scr_db / 10.0));
    cplxf* row = out.samples_.data() + cell * out.pulses_;
    for (std::size_t p = 0; p < out.pulses_; ++p) {
        const std::complex<double> s = std::polar(amplitude, phase0 + 2.0 * std::numbers::pi * doppler * static_cast<double>(p));
        row[p] += cplxf(static_cast<float>(s.real()), static_cast<float>(s.imag()));
    }
    out.has_target_ = true;
    return out;
}

std::vector<std::size_t> reference_cells(std::size_t cells, std::size_t cut, std::size_t guard, std::size_t n_ref)
{
    if (cut >= cells)
        throw DomainError("cell under test out of range");
    if (n_ref == 0)
        throw DomainError("need at least one reference cell");

    const std::size_t left_avail = cut > guard ? cut - guard : 0;
    const std::size_t right_avail = cut + guard + 1 < cells ? cells - (cut + guard + 1) : 0;
    if (left_avail + right_avail < n_ref)
        throw DomainError("only " + std::to_string(left_avail + right_avail) + " reference cells available around cell " +
                          std::to_string(cut) + ", need " + std::to_string(n_ref));

    std::size_t take_left = std::min(left_avail, n_ref / 2);
    std::size_t take_right = std::min(right_avail, n_ref - take_left);
    take_left = n_ref - take_right;

    std::vector<std::size_t> out;
    out.reserve(n_ref);
    for (std::size_t i = take_left; i >= 1; --i)
        out.push_back(cut - guard - i);
    for (std::size_t i = 1; i <= take_right; ++i)
        out.push_back(cut + guard + i);
    return out;
}

double raa_from_cell_amplitudes(std::span<const double> cell_amplitudes, std::size_t cut, std::size_t guard,
                                std::size_t n_ref)
{
    const std::vector<std::size_t> refs = reference_cells(cell_amplitudes.size(), cut, guard, n_ref);
    double ref = 0.0;
    for (std::size_t c : refs)
        ref += cell_amplitudes[c];
    ref /= static_cast<double>(refs.size());
    if (!(ref > 0.0))
        throw DomainError("reference cells have zero mean amplitude");
    return cell_amplitudes[cut] / ref;
}

double raa_feature(const ClutterFrame& frame, std::size_t cut, std::size_t guard, std::size_t n_ref)
{
    return raa_from_cell_amplitudes(frame.cell_mean_amplitudes(), cut, guard, n_ref);
}

std::size_t required_calibration_samples(double target_pfa)
{
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw DomainError("target_pfa must lie in (0, 1)");
    return static_cast<std::size_t>(std::ceil(10.0 / target_pfa - 1e-9));
}

ThresholdCalibrator::ThresholdCalibrator(std::size_t guard_cells, std::size_t reference_cells)
    : guard_(guard_cells), n_ref_(reference_cells)
{
    if (n_ref_ == 0)
        throw DomainError("need at least one reference cell");
}

void ThresholdCalibrator::add_frame(const ClutterFrame& frame)
{
    const std::vector<double> amps = frame.cell_mean_amplitudes();
    for (std::size_t cut = 0; cut < amps.size(); ++cut) {
        const std::size_t left = cut > guard_ ? cut - guard_ : 0;
        const std::size_t right = cut + guard_ + 1 < amps.size() ? amps.size() - (cut + guard_ + 1) : 0;
        if (left + right >= n_ref_)
            samples_.push_back(raa_from_cell_amplitudes(amps, cut, guard_, n_ref_));
    }
}

DetectorModel ThresholdCalibrator::finish(double target_pfa) const
{
    const std::size_t need = required_calibration_samples(target_pfa);
    if (samples_.size() < need)
        throw CalibrationError("calibration at pfa " + std::to_string(target_pfa) + " needs at least " +
                               std::to_string(need) + " clutter-only samples, got " + std::to_string(samples_.size()));

    const std::size_t n = samples_.size();
    const auto exceed = static_cast<std::size_t>(std::floor(target_pfa * static_cast<double>(n) + 1e-9));
    std::vector<double> sorted(samples_);
    const auto kth = sorted.begin() + static_cast<std::ptrdiff_t>(n - exceed - 1);
    std::nth_element(sorted.begin(), kth, sorted.end());

    DetectorModel m;
    m.threshold_theta = *kth;
    m.target_pfa = target_pfa;
    m.guard_cells = guard_;
    m.reference_cells = n_ref_;
    m.calibration_samples = n;
    if (!(m.threshold_theta > 0.0))
        throw CalibrationError("calibrated threshold is not positive");
    return m;
}

DetectorModel calibrate_threshold(std::span<const ClutterFrame> clutter_frames, double target_pfa,
                                  std::size_t guard_cells, std::size_t reference_cells)
{
    ThresholdCalibrator cal(guard_cells, reference_cells);
    for (const ClutterFrame& f : clutter_frames)
        cal.add_frame(f);
    return cal.finish(target_pfa);
}

bool detect(const ClutterFrame& frame, std::size_t cut, const DetectorModel& model)
{
    if (!(model.threshold_theta > 0.0) || !(model.target_pfa > 0.0 && model.target_pfa < 1.0))
        throw DomainError("detector model is not calibrated");
    return raa_feature(frame, cut, model.guard_cells, model.reference_cells) > model.threshold_theta;
}

RocResult roc_eval(double nu, std::span<const double> scr_list, double target_pfa, std::size_t trials,
                   std::uint64_t seed, const RocOptions& options)
{
    if (trials < 1000)
        throw DomainError("roc_eval needs at least 1000 trials");
    if (options.cut >= options.cells)
        throw DomainError("roc_eval: cell under test out of range");
    (void)reference_cells(options.cells, options.cut, options.guard_cells, options.reference_cells);

    const std::size_t wanted = options.calibration_samples > 0
                                   ? options.calibration_samples
                                   : static_cast<std::size_t>(std::ceil(1000.0 / target_pfa));
    ThresholdCalibrator cal(options.guard_cells, options.reference_cells);
    for (std::size_t i = 0; cal.size() < wanted; ++i)
        cal.add_frame(gen_k_clutter(options.cells, options.pulses, nu, derive_seed(seed, "roc.calibration", i)));

    RocResult res;
    res.model = cal.finish(target_pfa);
    res.trials = trials;

    for (std::size_t t = 0; t < trials; ++t) {
        const ClutterFrame null_frame = gen_k_clutter(options.cells, options.pulses, nu, derive_seed(seed, "roc.null", t));
        if (detect(null_frame, options.cut, res.model))
            ++res.false_alarms;
    }
    const double pfa = static_cast<double>(res.false_alarms) / static_cast<double>(trials);

    std::vector<std::size_t> hits(scr_list.size(), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const ClutterFrame base = gen_k_clutter(options.cells, options.pulses, nu, derive_seed(seed, "roc.target", t));
        const std::uint64_t phase_seed = derive_seed(seed, "roc.phase", t);
        for (std::size_t k = 0; k < scr_list.size(); ++k)
            if (detect(inject_target(base, options.cut, scr_list[k], phase_seed), options.cut, res.model))
                ++hits[k];
    }
    for (std::size_t k = 0; k < scr_list.size(); ++k)
        res.rows.push_back({scr_list[k], static_cast<double>(hits[k]) / static_cast<double>(trials), pfa});
    return res;
}

Interval binomial_ci95(std::size_t k, std::size_t n)
{
    if (n == 0 || k > n)
        throw DomainError("binomial_ci95 needs 0 <= k <= n, n > 0");
    Interval ci;
    const auto kd = static_cast<double>(k);
    const auto nd = static_cast<double>(n);
    ci.lo = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, 0.025);
    ci.hi = k == n ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, 0.975);
    return ci;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at)
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(in[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

constexpr std::uint32_t kPolarizationMask = 0x3u;
constexpr std::uint32_t kTargetFlag = 0x4u;

} // namespace

std::vector<std::uint8_t> encode_frame(const ClutterFrame& frame)
{
    if (frame.cells() > 0xffffffffu || frame.pulses() > 0xffffffffu)
        throw IoError("frame too large for the 32-bit header");
    std::vector<std::uint8_t> out;
    out.reserve(kFrameHeaderBytes + frame.samples().size() * 8);
    put_u32(out, kFrameMagic);
    put_u32(out, static_cast<std::uint32_t>(frame.cells()));
    put_u32(out, static_cast<std::uint32_t>(frame.pulses()));
    put_u32(out, static_cast<std::uint32_t>(frame.polarization()) | (frame.has_target() ? kTargetFlag : 0u));
    for (const cplxf& x : frame.samples()) {
        std::uint32_t re = 0;
        std::uint32_t im = 0;
        const float fr = x.real();
        const float fi = x.imag();
        std::memcpy(&re, &fr, 4);
        std::memcpy(&im, &fi, 4);
        put_u32(out, re);
        put_u32(out, im);
    }
    return out;
}

ClutterFrame decode_frame(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kFrameHeaderBytes)
        throw IoError("frame file shorter than its 16-byte header");
    if (get_u32(bytes, 0) != kFrameMagic)
        throw IoError("frame file has a bad magic number");
    const std::size_t cells = get_u32(bytes, 4);
    const std::size_t pulses = get_u32(bytes, 8);
    const std::uint32_t flags = get_u32(bytes, 12);
    if ((flags & ~(kPolarizationMask | kTargetFlag)) != 0)
        throw IoError("frame file sets unknown flag bits");
    if (cells == 0 || pulses == 0)
        throw IoError("frame file declares an empty frame");
    if (bytes.size() != kFrameHeaderBytes + cells * pulses * 8)
        throw IoError("frame file size does not match its header");

    std::vector<cplxf> samples(cells * pulses);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::uint32_t re = get_u32(bytes, kFrameHeaderBytes + 8 * i);
        const std::uint32_t im = get_u32(bytes, kFrameHeaderBytes + 8 * i + 4);
        float fr = 0.0f;
        float fi = 0.0f;
        std::memcpy(&fr, &re, 4);
        std::memcpy(&fi, &im, 4);
        samples[i] = {fr, fi};
    }
    return ClutterFrame(cells, pulses, std::move(samples), std::nan(""), 0,
                        static_cast<Polarization>(flags & kPolarizationMask), (flags & kTargetFlag) != 0);
}

void write_frame(const ClutterFrame& frame, const std::filesystem::path& path)
{
    const std::vector<std::uint8_t> bytes = encode_frame(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing " + path.string());
}

ClutterFrame read_frame(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_frame(bytes);
}

} // namespace hydrolink::clutter
