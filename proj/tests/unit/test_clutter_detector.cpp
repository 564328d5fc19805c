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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <vector>

using namespace hydrolink;
using namespace hydrolink::clutter;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double median_raa(double nu, std::size_t frames, std::uint64_t seed)
{
    std::vector<double> v;
    for (std::size_t i = 0; i < frames; ++i)
        v.push_back(raa_feature(gen_k_clutter(14, 64, nu, seed + i), 7, 1, 8));
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
}

} // namespace

TEST_CASE("generated frames have unit mean power and are seeded")
{
    for (double nu : {0.5, 1.0, 5.0, kInf}) {
        const ClutterFrame f = gen_k_clutter(14, 256, nu, 3);
        CHECK(f.mean_power() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(f.cells() == 14);
        CHECK(f.pulses() == 256);
    }
    const auto a = gen_k_clutter(4, 32, 1.0, 9);
    const auto b = gen_k_clutter(4, 32, 1.0, 9);
    CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
    CHECK_THROWS_AS(gen_k_clutter(4, 32, 0.0, 1), DomainError);
    CHECK_THROWS_AS(gen_k_clutter(0, 32, 1.0, 1), DimensionError);
}

TEST_CASE("nearly homogeneous clutter has Rayleigh amplitudes")
{
    const ClutterFrame f = gen_k_clutter(1, 1 << 14, 1e6, 21);
    std::vector<double> a;
    for (const auto& x : f.cell(0))
        a.push_back(std::abs(x));
    std::sort(a.begin(), a.end());
    // Kolmogorov-Smirnov against F(a) = 1 - exp(-a^2)
    double d = 0.0;
    const auto n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double cdf = 1.0 - std::exp(-a[i] * a[i]);
        d = std::max({d, std::abs(cdf - static_cast<double>(i) / n), std::abs(cdf - static_cast<double>(i + 1) / n)});
    }
    CHECK(d < 1.63 / std::sqrt(n));  // 1 % critical value
}

TEST_CASE("K clutter intensity has the compound-Gaussian fourth moment")
{
    // E[I^2] / E[I]^2 = 2 (1 + 1/nu)
    for (double nu : {1.0, 4.0}) {
        const ClutterFrame f = gen_k_clutter(8000, 8, nu, 5);
        double m1 = 0.0;
        double m2 = 0.0;
        for (const auto& x : f.samples()) {
            const double i = std::norm(x);
            m1 += i;
            m2 += i * i;
        }
        const auto n = static_cast<double>(f.samples().size());
        CHECK(m2 / n / ((m1 / n) * (m1 / n)) == doctest::Approx(2.0 * (1.0 + 1.0 / nu)).epsilon(0.08));
    }
}

TEST_CASE("texture is constant within a cell")
{
    // spiky clutter: per-cell power spread far exceeds the speckle-only spread
    const ClutterFrame spiky = gen_k_clutter(200, 512, 0.5, 8);
    const ClutterFrame flat = gen_k_clutter(200, 512, kInf, 8);
    auto spread = [](const ClutterFrame& f) {
        double lo = 1e300;
        double hi = 0.0;
        for (std::size_t c = 0; c < f.cells(); ++c) {
            lo = std::min(lo, f.cell_mean_power(c));
            hi = std::max(hi, f.cell_mean_power(c));
        }
        return hi / lo;
    };
    CHECK(spread(flat) < 1.6);
    CHECK(spread(spiky) > 100.0);
}

TEST_CASE("reference cells")
{
    auto sorted = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(reference_cells(14, 7, 1, 8)) == std::vector<std::size_t>{2, 3, 4, 5, 9, 10, 11, 12});
    CHECK(sorted(reference_cells(14, 0, 1, 8)) == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(sorted(reference_cells(14, 13, 1, 8)) == std::vector<std::size_t>{4, 5, 6, 7, 8, 9, 10, 11});
    CHECK(sorted(reference_cells(14, 2, 1, 8)) == std::vector<std::size_t>{0, 4, 5, 6, 7, 8, 9, 10});
    CHECK_THROWS_AS(reference_cells(8, 4, 1, 8), DomainError);
}

TEST_CASE("raa from cell amplitudes")
{
    std::vector<double> amp(14, 1.0);
    CHECK(raa_from_cell_amplitudes(amp, 7, 1, 8) == doctest::Approx(1.0));
    amp[7] = 2.0;
    amp[6] = 100.0;  // guard cell, ignored
    CHECK(raa_from_cell_amplitudes(amp, 7, 1, 8) == doctest::Approx(2.0));
}

TEST_CASE("raa median near one for mild or no texture")
{
    CHECK(median_raa(kInf, 2000, 100) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(median_raa(5.0, 2000, 200) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("threshold is the order statistic that leaves floor(pfa N) samples above")
{
    ThresholdCalibrator cal;
    for (int i = 1; i <= 1000; ++i)
        cal.add_sample(static_cast<double>(i));
    const DetectorModel m = cal.finish(0.01);
    CHECK(m.threshold_theta == 990.0);
    CHECK(m.calibration_samples == 1000);
    CHECK(m.target_pfa == 0.01);
}

TEST_CASE("calibration refuses too few samples")
{
    CHECK(required_calibration_samples(1e-3) == 10000);
    ThresholdCalibrator cal;
    for (int i = 0; i < 100; ++i)
        cal.add_sample(1.0);
    CHECK_THROWS_WITH_AS(cal.finish(1e-3), doctest::Contains("10000"), CalibrationError);
}

TEST_CASE("calibrator pools every feasible cell of a frame")
{
    ThresholdCalibrator cal(1, 8);
    cal.add_frame(gen_k_clutter(14, 16, 1.0, 1));
    CHECK(cal.size() == 14);
}

TEST_CASE("detection is strict")
{
    const ClutterFrame f = gen_k_clutter(14, 64, kInf, 2);
    const double raa = raa_feature(f, 7, 1, 8);
    DetectorModel m;
    m.target_pfa = 1e-3;
    m.threshold_theta = raa;
    CHECK_FALSE(detect(f, 7, m));
    m.threshold_theta = std::nextafter(raa, 0.0);
    CHECK(detect(f, 7, m));
}

TEST_CASE("target injection")
{
    const ClutterFrame f = gen_k_clutter(14, 64, 1.0, 4);
    const ClutterFrame same = inject_target(f, 7, -kInf, 1);
    CHECK(std::equal(f.samples().begin(), f.samples().end(), same.samples().begin()));
    CHECK_FALSE(same.has_target());

    const ClutterFrame t = inject_target(f, 7, 0.0, 1);
    CHECK(t.has_target());
    for (std::size_t k = 0; k < 64; ++k)
        CHECK(std::abs(t.cell(7)[k] - f.cell(7)[k]) == doctest::Approx(1.0).epsilon(1e-5));
    for (std::size_t c : {0u, 6u, 8u})
        CHECK(std::equal(t.cell(c).begin(), t.cell(c).end(), f.cell(c).begin()));
    CHECK_THROWS_AS(inject_target(f, 14, 0.0, 1), DomainError);
}

TEST_CASE("roc: stronger targets are found more often")
{
    RocOptions o;
    o.calibration_samples = 20000;
    const std::vector<double> scr{-5.0, 0.0, 5.0, 10.0, 15.0};
    const RocResult r = roc_eval(1.0, scr, 1e-2, 1000, 3, o);
    REQUIRE(r.rows.size() == 5);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        CHECK(r.rows[i].pd >= r.rows[i - 1].pd);
    CHECK(r.rows.back().pd > 0.9);
    CHECK(binomial_ci95(r.false_alarms, r.trials).contains(1e-2));
    CHECK_THROWS_AS(roc_eval(1.0, scr, 1e-2, 999, 3, o), DomainError);
}

TEST_CASE("clopper-pearson interval")
{
    auto ci = binomial_ci95(0, 10);
    CHECK(ci.lo == 0.0);
    CHECK(ci.hi == doctest::Approx(0.3084971078187608).epsilon(1e-10));
    ci = binomial_ci95(5, 10);
    CHECK(ci.lo == doctest::Approx(0.18708602844739855).epsilon(1e-10));
    CHECK(ci.hi == doctest::Approx(0.8129139715526015).epsilon(1e-10));
    ci = binomial_ci95(10, 10);
    CHECK(ci.lo == doctest::Approx(0.6915028921812392).epsilon(1e-10));
    CHECK(ci.hi == 1.0);
    ci = binomial_ci95(100, 100000);
    CHECK(ci.lo == doctest::Approx(0.0008137116819701752).epsilon(1e-9));
    CHECK(ci.hi == doctest::Approx(0.001216136395647647).epsilon(1e-9));
    CHECK_THROWS_AS(binomial_ci95(3, 2), DomainError);
}

TEST_CASE("frame files round-trip")
{
    const ClutterFrame f = inject_target(gen_k_clutter(5, 33, 2.0, 6, Polarization::vh), 2, 3.0, 1);
    const auto bytes = encode_frame(f);
    CHECK(bytes.size() == kFrameHeaderBytes + 5 * 33 * 8);
    CHECK(bytes[0] == 'H');
    CHECK(bytes[1] == 'L');
    CHECK(bytes[2] == 'C');
    CHECK(bytes[3] == 'F');
    const ClutterFrame g = decode_frame(bytes);
    CHECK(g.cells() == 5);
    CHECK(g.pulses() == 33);
    CHECK(g.polarization() == Polarization::vh);
    CHECK(g.has_target());
    CHECK(std::equal(f.samples().begin(), f.samples().end(), g.samples().begin()));

    const auto path = std::filesystem::temp_directory_path() / "hydrolink_frame_roundtrip.bin";
    write_frame(f, path);
    const ClutterFrame h = read_frame(path);
    CHECK(std::equal(f.samples().begin(), f.samples().end(), h.samples().begin()));
    std::filesystem::remove(path);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_frame(bad), IoError);
    auto cut = bytes;
    cut.pop_back();
    CHECK_THROWS_AS(decode_frame(cut), IoError);
    CHECK_THROWS_AS(read_frame("/nonexistent/frame.bin"), IoError);
}
