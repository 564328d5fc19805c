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

#ifndef HYDROLINK_CORE_ACOUSTIC_CHANNEL_HPP
#define HYDROLINK_CORE_ACOUSTIC_CHANNEL_HPP

#include <cstddef>
#include <vector>

// Frequency and distance dependent attenuation plus ambient noise of the
// underwater acoustic channel. Units: distances in metres, frequencies in
// kHz, absorption in dB/km, noise PSD in dB re uPa^2/Hz. Reference distance 1 m.

namespace hydrolink::channel {

struct Environment {
    double spreading_k = 1.5;  // 1 cylindrical, 2 spherical, 1.5 practical
    double shipping_s = 0.5;   // shipping activity in [0, 1]
    double wind_w = 0.0;       // wind speed, m/s

    void validate() const;
};

/// Uniform search grid f_min, f_min + step, ... up to f_max (inclusive within rounding).
struct FrequencyGrid {
    double f_min_khz = 0.1;
    double f_max_khz = 200.0;
    double step_khz = 0.1;

    void validate() const;
    std::size_t size() const;
    double at(std::size_t i) const { return f_min_khz + static_cast<double>(i) * step_khz; }
    std::vector<double> points() const;
};

/// Thorp absorption coefficient, dB/km.
double thorp_absorption(double f_khz);

double path_loss_db(double distance_m, double f_khz, const Environment& env);

/// Turbulence, shipping, wind and thermal noise summed in linear power.
double noise_psd_db(double f_khz, const Environment& env);

struct NoiseComponents {
    double turbulence_db;
    double shipping_db;
    double wind_db;
    double thermal_db;
};
NoiseComponents noise_components_db(double f_khz, const Environment& env);

/// Attenuation-noise product A(l,f)N(f) in dB.
double an_product_db(double distance_m, double f_khz, const Environment& env);

/// Grid argmin of the AN product; ties go to the lower frequency.
double optimal_frequency(double distance_m, const Environment& env, const FrequencyGrid& grid);

struct Band {
    double f_opt_khz = 0.0;
    double f_lo_khz = 0.0;
    double f_hi_khz = 0.0;
    double step_khz = 0.0;
    // Only the minimiser was within 3 dB; the band is reported as one grid step.
    bool narrow = false;

    double bandwidth_khz() const { return f_hi_khz - f_lo_khz; }
    double bandwidth_hz() const { return 1e3 * bandwidth_khz(); }
};

/// Maximal contiguous run of grid points around the optimum whose AN product
/// stays within 3 dB of the minimum.
Band band_3db(double distance_m, const Environment& env, const FrequencyGrid& grid);

} // namespace hydrolink::channel

#endif
