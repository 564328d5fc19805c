/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
 * Copyright (C) 2026 hydrolink contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libhydrolink.
 *
 * Every fallible call returns an hl_status; on failure a message describing
 * the last error of the calling thread is available from hl_last_error().
 * Objects behind opaque handles are created by *_create / *_generate / *_run
 * functions and must be released with the matching *_free function; passing
 * NULL to a *_free function is a no-op.
 *
 * Complex vectors cross the boundary as interleaved doubles (re, im, re, im, ...),
 * so a vector of n complex values occupies 2n doubles.
 */

#ifndef HYDROLINK_H
#define HYDROLINK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HYDROLINK_BUILDING)
#    define HL_API __declspec(dllexport)
#  else
#    define HL_API __declspec(dllimport)
#  endif
#else
#  define HL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hl_status {
    HL_OK = 0,
    HL_ERR_DOMAIN = 1,
    HL_ERR_CONFIG = 2,
    HL_ERR_DIMENSION = 3,
    HL_ERR_CALIBRATION = 4,
    HL_ERR_IO = 5,
    HL_ERR_NULL_ARGUMENT = 6,
    HL_ERR_INDEX = 7,
    HL_ERR_INTERNAL = 99
} hl_status;

HL_API const char* hl_version(void);
HL_API const char* hl_status_name(hl_status status);
/* Message of the last failed call on this thread; "" when none. */
HL_API const char* hl_last_error(void);

/* ---- acoustic channel ------------------------------------------------- */

typedef struct hl_environment {
    double spreading_k; /* [1, 2] */
    double shipping_s;  /* [0, 1] */
    double wind_w;      /* m/s, >= 0 */
} hl_environment;

typedef struct hl_frequency_grid {
    double f_min_khz;
    double f_max_khz;
    double step_khz;
} hl_frequency_grid;

HL_API hl_environment hl_environment_default(void);
HL_API hl_frequency_grid hl_frequency_grid_default(void);

HL_API hl_status hl_thorp_absorption(double f_khz, double* db_per_km);
HL_API hl_status hl_path_loss_db(double distance_m, double f_khz, const hl_environment* env, double* loss_db);
HL_API hl_status hl_noise_psd_db(double f_khz, const hl_environment* env, double* psd_db);
HL_API hl_status hl_an_product_db(double distance_m, double f_khz, const hl_environment* env, double* an_db);
HL_API hl_status hl_optimal_frequency(double distance_m, const hl_environment* env, const hl_frequency_grid* grid,
                                      double* f_opt_khz);

typedef struct hl_band {
    double f_opt_khz;
    double f_lo_khz;
    double f_hi_khz;
    int narrow; /* 1 when the band collapsed to a single grid step */
} hl_band;

HL_API hl_status hl_band_3db(double distance_m, const hl_environment* env, const hl_frequency_grid* grid, hl_band* band);

/* ---- link budget ------------------------------------------------------ */

typedef struct hl_link_budget {
    double f_opt_khz;
    double f_lo_khz;
    double f_hi_khz;
    double bandwidth_hz;
    double source_level_db;
    double tx_power_w;
    double bit_rate_bps;
    int narrow_band;
} hl_link_budget;

HL_API double hl_acoustic_power_watts(double source_level_db);
/* grid may be NULL for the default grid; efficiency in (0, 1]. */
HL_API hl_status hl_link_budget_compute(double distance_m, const hl_environment* env, double snr_db, double efficiency,
                                        const hl_frequency_grid* grid, hl_link_budget* out);

/* ---- relay chain ------------------------------------------------------ */

typedef struct hl_chain_scenario {
    double total_distance_m;
    int n_relays;
    double packet_bits;
    double snr_db;
    double rx_power_w;
    double sound_speed_mps;
    double efficiency;
    hl_environment env;
    hl_frequency_grid grid;
} hl_chain_scenario;

typedef struct hl_hop_metrics {
    double t_tx_s;
    double delay_s;
    double energy_j;
    double tx_power_w;
    double bit_rate_bps;
} hl_hop_metrics;

typedef struct hl_relay_row {
    int n;
    double hop_distance_m;
    double end_to_end_delay_s;
    double total_energy_j;
    double hop_tx_power_w;
    double hop_bit_rate_bps;
} hl_relay_row;

typedef struct hl_relay_report hl_relay_report;

HL_API hl_chain_scenario hl_chain_scenario_default(void);
HL_API hl_status hl_hop_metrics_compute(double hop_distance_m, const hl_chain_scenario* sc, hl_hop_metrics* out);
HL_API hl_status hl_chain_delay(const hl_chain_scenario* sc, double* delay_s);
HL_API hl_status hl_chain_energy(const hl_chain_scenario* sc, double* energy_j);

HL_API hl_status hl_relay_sweep(const hl_chain_scenario* sc, int n_max, hl_relay_report** report);
HL_API size_t hl_relay_report_size(const hl_relay_report* report);
HL_API hl_status hl_relay_report_row(const hl_relay_report* report, size_t index, hl_relay_row* row);
HL_API hl_status hl_relay_report_summary(const hl_relay_report* report, double* delay_spread, int* energy_argmin);
HL_API void hl_relay_report_free(hl_relay_report* report);

HL_API hl_status hl_midpoint_comparison(const hl_chain_scenario* sc, double* energy_reduction_pct,
                                        double* delay_increase_pct);

typedef struct hl_relay_threshold {
    double distance_m;
    double below_m;
    double above_m;
    int argmin_above;
    int iterations;
} hl_relay_threshold;

HL_API hl_status hl_relaying_threshold(const hl_chain_scenario* sc, double d_lo_m, double d_hi_m, int n_max,
                                       double tol_m, hl_relay_threshold* out);

typedef enum hl_medium { HL_MEDIUM_EM = 0, HL_MEDIUM_ACOUSTIC = 1, HL_MEDIUM_OPTICAL = 2, HL_MEDIUM_MI = 3 } hl_medium;

typedef enum hl_medium_context {
    HL_CONTEXT_ABOVE_SURFACE = 0,
    HL_CONTEXT_AIR_SEA_BOUNDARY = 1,
    HL_CONTEXT_UNDERWATER = 2,
    HL_CONTEXT_CLEAR_WATER_LOS = 3
} hl_medium_context;

/* Writes up to `capacity` feasible media, best first, and their count. When
 * none is feasible *count is 0 and the reason is copied into `reason`
 * (truncated to reason_capacity, always NUL-terminated if reason_capacity > 0). */
HL_API hl_status hl_select_medium(double distance_m, hl_medium_context context, hl_medium* media, size_t capacity,
                                  size_t* count, char* reason, size_t reason_capacity);
HL_API const char* hl_medium_name(hl_medium medium);

/* ---- sparse channel estimation --------------------------------------- */

typedef struct hl_sparse_channel hl_sparse_channel;
typedef struct hl_pilot_matrix hl_pilot_matrix;

typedef enum hl_pilot_scheme {
    HL_PILOTS_GAUSSIAN = 0,
    HL_PILOTS_PARTIAL_FOURIER = 1,
    HL_PILOTS_IDENTITY = 2
} hl_pilot_scheme;

HL_API hl_status hl_sparse_channel_generate(size_t n, size_t s_taps, double decay_taps, uint64_t seed,
                                            hl_sparse_channel** channel);
/* Wraps caller-supplied taps (2n doubles). */
HL_API hl_status hl_sparse_channel_from_taps(const double* taps, size_t n, hl_sparse_channel** channel);
HL_API size_t hl_sparse_channel_length(const hl_sparse_channel* channel);
HL_API hl_status hl_sparse_channel_taps(const hl_sparse_channel* channel, double* taps, size_t n);
HL_API hl_status hl_sparse_channel_check(const hl_sparse_channel* channel, size_t* nonzero_taps,
                                         double* top_energy_fraction, int* ok);
HL_API void hl_sparse_channel_free(hl_sparse_channel* channel);

HL_API hl_status hl_pilot_matrix_generate(size_t m, size_t n, hl_pilot_scheme scheme, uint64_t seed,
                                          hl_pilot_matrix** pilots);
HL_API size_t hl_pilot_matrix_rows(const hl_pilot_matrix* pilots);
HL_API size_t hl_pilot_matrix_cols(const hl_pilot_matrix* pilots);
HL_API void hl_pilot_matrix_free(hl_pilot_matrix* pilots);

/* y must hold 2m doubles. */
HL_API hl_status hl_measure(const hl_sparse_channel* channel, const hl_pilot_matrix* pilots, double noise_std,
                            uint64_t noise_seed, double* y, size_t m);

typedef struct hl_omp_info {
    size_t iterations;
    double final_residual;
    int rank_deficient;
} hl_omp_info;

/* max_sparsity == 0 and residual_tol < 0 select the defaults (10 % of n, 1e-6 ||y||).
 * estimate must hold 2n doubles. */
HL_API hl_status hl_omp_reconstruct(const double* y, size_t m, const hl_pilot_matrix* pilots, size_t max_sparsity,
                                    double residual_tol, double* estimate, size_t n, hl_omp_info* info);
HL_API hl_status hl_nmse(const double* truth, const double* estimate, size_t n, double* value);

typedef struct hl_pilot_savings_row {
    size_t m;
    double median_nmse;
    double exact_fraction;
} hl_pilot_savings_row;

HL_API hl_status hl_pilot_savings_curve(size_t n, size_t s, const size_t* m_list, size_t m_count, size_t trials,
                                        uint64_t seed, double noise_std, double decay_taps, hl_pilot_scheme scheme,
                                        hl_pilot_savings_row* rows);

/* ---- decision feedback equalizer ------------------------------------- */

typedef struct hl_dfe hl_dfe;

typedef struct hl_dfe_config {
    size_t n_ff;
    size_t n_fb;
    double mu;
} hl_dfe_config;

HL_API hl_dfe_config hl_dfe_config_default(void);

/* estimate == NULL: cold start from `seed`. Otherwise taps derive from the
 * estimated response (2*estimate_len doubles) and noise_var. */
HL_API hl_status hl_dfe_create(const hl_dfe_config* config, const double* estimate, size_t estimate_len,
                               double noise_var, uint64_t seed, hl_dfe** dfe);
HL_API hl_status hl_dfe_prime(hl_dfe* dfe, double in_re, double in_im);
/* desired == NULL in decision-directed mode. error may be NULL. */
HL_API hl_status hl_dfe_step(hl_dfe* dfe, double in_re, double in_im, const double* desired, double* decision,
                             double* error_re_im);
HL_API hl_status hl_dfe_set_training(hl_dfe* dfe, int training);
HL_API size_t hl_dfe_decision_delay(const hl_dfe* dfe);
HL_API hl_status hl_dfe_taps(const hl_dfe* dfe, double* ff, size_t n_ff, double* fb, size_t n_fb);
HL_API void hl_dfe_free(hl_dfe* dfe);

typedef struct hl_ber_result hl_ber_result;

HL_API hl_status hl_ber_sim(const double* channel, size_t channel_len, double snr_db, size_t n_train, size_t n_data,
                            const hl_dfe_config* config, const double* estimate, size_t estimate_len,
                            double estimate_noise_var, uint64_t seed, hl_ber_result** result);
HL_API double hl_ber_result_ber(const hl_ber_result* result);
HL_API size_t hl_ber_result_errors(const hl_ber_result* result);
HL_API size_t hl_ber_result_symbols(const hl_ber_result* result);
HL_API size_t hl_ber_result_training_len(const hl_ber_result* result);
HL_API hl_status hl_ber_result_training_mse(const hl_ber_result* result, double* mse, size_t len);
HL_API void hl_ber_result_free(hl_ber_result* result);

HL_API double hl_bpsk_awgn_ber(double snr_db);

typedef struct hl_init_comparison_options {
    size_t channel_length;
    size_t sparse_taps;
    double decay_taps;
    double snr_db;
    size_t pilots;
    size_t n_train;
    size_t n_data;
    hl_dfe_config dfe;
    double mse_threshold;
    size_t mse_window;
    size_t runs;
} hl_init_comparison_options;

typedef struct hl_init_comparison_run {
    size_t cold_symbols;
    size_t cs_symbols;
    int cold_reached;
    int cs_reached;
    double estimate_nmse;
    double cold_ber;
    double cs_ber;
} hl_init_comparison_run;

typedef struct hl_init_comparison hl_init_comparison;

HL_API hl_init_comparison_options hl_init_comparison_options_default(void);
HL_API hl_status hl_compare_initialization(const hl_init_comparison_options* options, uint64_t seed,
                                           hl_init_comparison** result);
HL_API size_t hl_init_comparison_size(const hl_init_comparison* result);
HL_API hl_status hl_init_comparison_run_at(const hl_init_comparison* result, size_t index, hl_init_comparison_run* run);
HL_API hl_status hl_init_comparison_summary(const hl_init_comparison* result, double* median_cold, double* median_cs,
                                            double* reduction);
/* Mean training |e|^2 per symbol over all runs; cs != 0 selects the
 * channel-estimate initialised equalizer. len must equal options.n_train. */
HL_API hl_status hl_init_comparison_mse(const hl_init_comparison* result, int cs, double* mse, size_t len);
HL_API void hl_init_comparison_free(hl_init_comparison* result);

/* ---- sea clutter detection ------------------------------------------- */

typedef struct hl_clutter_frame hl_clutter_frame;

typedef enum hl_polarization { HL_POL_HH = 0, HL_POL_HV = 1, HL_POL_VH = 2, HL_POL_VV = 3 } hl_polarization;

typedef struct hl_detector_model {
    double threshold_theta;
    double target_pfa;
    size_t guard_cells;
    size_t reference_cells;
    size_t calibration_samples;
} hl_detector_model;

/* nu may be +INFINITY for homogeneous (Rayleigh) clutter. */
HL_API hl_status hl_clutter_generate(size_t cells, size_t pulses, double nu, uint64_t seed, hl_polarization pol,
                                     hl_clutter_frame** frame);
HL_API hl_status hl_clutter_inject_target(const hl_clutter_frame* frame, size_t cell, double scr_db, uint64_t seed,
                                          double doppler, hl_clutter_frame** out);
HL_API size_t hl_clutter_cells(const hl_clutter_frame* frame);
HL_API size_t hl_clutter_pulses(const hl_clutter_frame* frame);
HL_API double hl_clutter_mean_power(const hl_clutter_frame* frame);
/* Copies one cell as interleaved floats (2*pulses). */
HL_API hl_status hl_clutter_cell(const hl_clutter_frame* frame, size_t cell, float* samples, size_t pulses);
HL_API hl_status hl_clutter_write(const hl_clutter_frame* frame, const char* path);
HL_API hl_status hl_clutter_read(const char* path, hl_clutter_frame** frame);
HL_API void hl_clutter_free(hl_clutter_frame* frame);

HL_API hl_status hl_raa_feature(const hl_clutter_frame* frame, size_t cut, size_t guard, size_t n_ref, double* raa);
HL_API hl_status hl_calibrate_threshold(const hl_clutter_frame* const* frames, size_t count, double target_pfa,
                                        size_t guard, size_t n_ref, hl_detector_model* model);
HL_API hl_status hl_detect(const hl_clutter_frame* frame, size_t cut, const hl_detector_model* model, int* target);

typedef struct hl_roc_options {
    size_t cells;
    size_t pulses;
    size_t cut;
    size_t guard_cells;
    size_t reference_cells;
    size_t calibration_samples; /* 0: ceil(1000 / pfa) */
} hl_roc_options;

typedef struct hl_roc_row {
    double scr_db;
    double pd;
    double pfa;
} hl_roc_row;

HL_API hl_roc_options hl_roc_options_default(void);
/* rows must hold scr_count entries; model may be NULL. */
HL_API hl_status hl_roc_eval(double nu, const double* scr_db, size_t scr_count, double target_pfa, size_t trials,
                             uint64_t seed, const hl_roc_options* options, hl_roc_row* rows, hl_detector_model* model);

HL_API hl_status hl_binomial_ci95(size_t k, size_t n, double* lo, double* hi);

/* ---- seeding --------------------------------------------------------- */

HL_API uint64_t hl_derive_seed(uint64_t global_seed, const char* stream, uint64_t trial);

#ifdef __cplusplus
}
#endif

#endif
