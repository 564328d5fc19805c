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

#include <hydrolink/hydrolink.h>

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

TEST_CASE("status names and last error")
{
    CHECK(std::string(hl_status_name(HL_OK)) == "ok");
    CHECK(std::string(hl_status_name(HL_ERR_CALIBRATION)) == "calibration error");
    double v = 0.0;
    CHECK(hl_path_loss_db(0.5, 10.0, nullptr, &v) == HL_ERR_DOMAIN);
    CHECK(std::strlen(hl_last_error()) > 0);
    CHECK(hl_path_loss_db(1000.0, 10.0, nullptr, &v) == HL_OK);
    CHECK(std::string(hl_last_error()).empty());
    CHECK(v == doctest::Approx(46.18702993870816));
    CHECK(hl_thorp_absorption(10.0, nullptr) == HL_ERR_NULL_ARGUMENT);
}

TEST_CASE("link budget through the C interface")
{
    const hl_environment env = hl_environment_default();
    hl_link_budget lb;
    REQUIRE(hl_link_budget_compute(1e3, &env, 20.0, 1.0, nullptr, &lb) == HL_OK);
    CHECK(lb.f_opt_khz == doctest::Approx(20.2));
    CHECK(lb.bandwidth_hz == doctest::Approx(25000.0));
    CHECK(lb.tx_power_w == doctest::Approx(5.332955038240681e-4).epsilon(1e-9));
    hl_frequency_grid tiny{1.0, 1.5, 0.1};
    CHECK(hl_link_budget_compute(1e3, &env, 20.0, 1.0, &tiny, &lb) == HL_ERR_CONFIG);
    hl_environment bad = env;
    bad.shipping_s = 1.5;
    CHECK(hl_link_budget_compute(1e3, &bad, 20.0, 1.0, nullptr, &lb) == HL_ERR_DOMAIN);
}

TEST_CASE("relay report handle")
{
    hl_chain_scenario sc = hl_chain_scenario_default();
    sc.total_distance_m = 1e5;
    hl_relay_report* r = nullptr;
    REQUIRE(hl_relay_sweep(&sc, 10, &r) == HL_OK);
    CHECK(hl_relay_report_size(r) == 11);
    hl_relay_row row;
    CHECK(hl_relay_report_row(r, 1, &row) == HL_OK);
    CHECK(row.n == 1);
    CHECK(row.hop_distance_m == doctest::Approx(5e4));
    CHECK(hl_relay_report_row(r, 11, &row) == HL_ERR_INDEX);
    int argmin = -1;
    CHECK(hl_relay_report_summary(r, nullptr, &argmin) == HL_OK);
    CHECK(argmin == 1);
    hl_relay_report_free(r);
    hl_relay_report_free(nullptr);

    hl_relay_threshold th;
    CHECK(hl_relaying_threshold(&sc, 1e3, 1e5, 50, 1.0, &th) == HL_OK);
    CHECK(th.distance_m == doctest::Approx(74208.8).epsilon(1e-5));
}

TEST_CASE("medium selection copies out")
{
    hl_medium media[4];
    size_t count = 0;
    char reason[128];
    CHECK(hl_select_medium(50.0, HL_CONTEXT_CLEAR_WATER_LOS, media, 4, &count, reason, sizeof reason) == HL_OK);
    REQUIRE(count == 3);
    CHECK(media[0] == HL_MEDIUM_OPTICAL);
    CHECK(hl_select_medium(5e4, HL_CONTEXT_UNDERWATER, media, 4, &count, reason, 8) == HL_OK);
    CHECK(count == 0);
    CHECK(std::strlen(reason) == 7);
    CHECK(std::string(hl_medium_name(HL_MEDIUM_MI)) == "mi");
}

TEST_CASE("sparse estimation round trip")
{
    hl_sparse_channel* ch = nullptr;
    REQUIRE(hl_sparse_channel_generate(64, 3, 16.0, 5, &ch) == HL_OK);
    hl_pilot_matrix* phi = nullptr;
    REQUIRE(hl_pilot_matrix_generate(20, 64, HL_PILOTS_GAUSSIAN, 6, &phi) == HL_OK);
    std::vector<double> y(40);
    REQUIRE(hl_measure(ch, phi, 0.0, 0, y.data(), 20) == HL_OK);
    std::vector<double> est(128);
    hl_omp_info info;
    REQUIRE(hl_omp_reconstruct(y.data(), 20, phi, 0, -1.0, est.data(), 64, &info) == HL_OK);
    CHECK(info.iterations == 3);
    std::vector<double> truth(128);
    REQUIRE(hl_sparse_channel_taps(ch, truth.data(), 64) == HL_OK);
    double e = 1.0;
    CHECK(hl_nmse(truth.data(), est.data(), 64, &e) == HL_OK);
    CHECK(e < 1e-20);
    CHECK(hl_measure(ch, phi, 0.0, 0, y.data(), 19) == HL_ERR_DIMENSION);
    hl_pilot_matrix* big = nullptr;
    CHECK(hl_pilot_matrix_generate(65, 64, HL_PILOTS_GAUSSIAN, 6, &big) == HL_ERR_DIMENSION);
    CHECK(big == nullptr);
    hl_pilot_matrix_free(phi);
    hl_sparse_channel_free(ch);

    const size_t ms[] = {0, 20};
    hl_pilot_savings_row rows[2];
    CHECK(hl_pilot_savings_curve(64, 3, ms, 2, 50, 1, 0.0, 16.0, HL_PILOTS_GAUSSIAN, rows) == HL_OK);
    CHECK(rows[0].median_nmse == 1.0);
    CHECK(rows[1].exact_fraction == 1.0);
}

TEST_CASE("dfe handle")
{
    const hl_dfe_config cfg{1, 0, 0.01};
    const double h[] = {1.0, 0.0};
    hl_dfe* d = nullptr;
    REQUIRE(hl_dfe_create(&cfg, h, 1, 0.0, 0, &d) == HL_OK);
    CHECK(hl_dfe_decision_delay(d) == 0);
    double decision = 0.0;
    double err[2];
    const double want = -1.0;
    CHECK(hl_dfe_step(d, -1.0, 0.0, &want, &decision, err) == HL_OK);
    CHECK(decision == -1.0);
    CHECK(std::hypot(err[0], err[1]) < 1e-12);
    CHECK(hl_dfe_step(d, -1.0, 0.0, nullptr, &decision, err) == HL_ERR_DOMAIN);
    CHECK(hl_dfe_set_training(d, 0) == HL_OK);
    CHECK(hl_dfe_step(d, 1.0, 0.0, nullptr, &decision, nullptr) == HL_OK);
    double ff[2];
    CHECK(hl_dfe_taps(d, ff, 1, nullptr, 0) == HL_OK);
    CHECK(ff[0] == doctest::Approx(1.0));
    hl_dfe_free(d);

    const hl_dfe_config bad{12, 8, 1.5};
    CHECK(hl_dfe_create(&bad, nullptr, 0, 0.0, 0, &d) == HL_ERR_DOMAIN);

    hl_ber_result* r = nullptr;
    const hl_dfe_config c2{4, 2, 0.01};
    REQUIRE(hl_ber_sim(h, 1, 10.0, 500, 5000, &c2, nullptr, 0, 0.0, 3, &r) == HL_OK);
    CHECK(hl_ber_result_symbols(r) == 5000);
    CHECK(hl_ber_result_training_len(r) == 500);
    std::vector<double> mse(500);
    CHECK(hl_ber_result_training_mse(r, mse.data(), 500) == HL_OK);
    hl_ber_result_free(r);
    CHECK(hl_bpsk_awgn_ber(8.0) == doctest::Approx(1.9090777407599314e-4));
}

TEST_CASE("clutter handles")
{
    hl_clutter_frame* f = nullptr;
    REQUIRE(hl_clutter_generate(14, 64, 1.0, 2, HL_POL_HV, &f) == HL_OK);
    CHECK(hl_clutter_cells(f) == 14);
    CHECK(hl_clutter_mean_power(f) == doctest::Approx(1.0).epsilon(1e-6));
    std::vector<float> cell(128);
    CHECK(hl_clutter_cell(f, 3, cell.data(), 64) == HL_OK);
    CHECK(hl_clutter_cell(f, 14, cell.data(), 64) == HL_ERR_INDEX);

    const std::string path = "capi_frame_test.bin";
    CHECK(hl_clutter_write(f, path.c_str()) == HL_OK);
    hl_clutter_frame* g = nullptr;
    REQUIRE(hl_clutter_read(path.c_str(), &g) == HL_OK);
    CHECK(hl_clutter_pulses(g) == 64);
    std::remove(path.c_str());
    CHECK(hl_clutter_read("/nonexistent/x.bin", &g) == HL_ERR_IO);

    double raa = 0.0;
    CHECK(hl_raa_feature(f, 7, 1, 8, &raa) == HL_OK);
    CHECK(raa > 0.0);
    hl_detector_model m;
    const hl_clutter_frame* frames[] = {f};
    CHECK(hl_calibrate_threshold(frames, 1, 1e-3, 1, 8, &m) == HL_ERR_CALIBRATION);
    CHECK(std::string(hl_last_error()).find("10000") != std::string::npos);
    hl_clutter_free(f);
    hl_clutter_free(nullptr);

    const double scr[] = {0.0, 10.0};
    hl_roc_row rows[2];
    hl_roc_options o = hl_roc_options_default();
    o.calibration_samples = 20000;
    CHECK(hl_roc_eval(1.0, scr, 2, 1e-2, 1000, 4, &o, rows, &m) == HL_OK);
    CHECK(rows[1].pd >= rows[0].pd);
    CHECK(m.target_pfa == 1e-2);
    double lo = 0.0;
    double hi = 0.0;
    CHECK(hl_binomial_ci95(5, 10, &lo, &hi) == HL_OK);
    CHECK(lo == doctest::Approx(0.18708602844739855));
}

TEST_CASE("seed derivation is stable and stream-separated")
{
    CHECK(hl_derive_seed(1, "a", 0) == hl_derive_seed(1, "a", 0));
    CHECK(hl_derive_seed(1, "a", 0) != hl_derive_seed(1, "b", 0));
    CHECK(hl_derive_seed(1, "a", 0) != hl_derive_seed(1, "a", 1));
    CHECK(hl_derive_seed(1, "a", 0) != hl_derive_seed(2, "a", 0));
}
