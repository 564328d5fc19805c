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

#include "hydrolink/hydrolink.h"

#include "acoustic_channel.hpp"
#include "clutter_detector.hpp"
#include "dfe_equalizer.hpp"
#include "error.hpp"
#include "link_budget.hpp"
#include "relay_planner.hpp"
#include "seeding.hpp"
#include "sparse_estimation.hpp"

#include <algorithm>
#include <complex>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

using namespace hydrolink;

struct hl_relay_report {
    relay::RelayChainReport report;
};
struct hl_sparse_channel {
    std::vector<cs::cplx> taps;
};
struct hl_pilot_matrix {
    cs::PilotMatrix phi;
};
struct hl_dfe {
    dfe::DfeState state;
};
struct hl_ber_result {
    dfe::BerResult result;
};
struct hl_init_comparison {
    dfe::InitComparison result;
};
struct hl_clutter_frame {
    clutter::ClutterFrame frame;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument : std::exception {
    const char* name;
    explicit NullArgument(const char* n) : name(n) {}
};

struct IndexError : std::exception {
    std::string msg;
    explicit IndexError(std::string m) : msg(std::move(m)) {}
};

template <class F>
hl_status guarded(F&& f) noexcept
{
    try {
        f();
        g_last_error.clear();
        return HL_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<hl_status>(static_cast<int>(e.code()));
    } catch (const NullArgument& e) {
        g_last_error = std::string("null argument: ") + e.name;
        return HL_ERR_NULL_ARGUMENT;
    } catch (const IndexError& e) {
        g_last_error = e.msg;
        return HL_ERR_INDEX;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return HL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return HL_ERR_INTERNAL;
    }
}

template <class T>
T* need(T* p, const char* name)
{
    if (!p)
        throw NullArgument(name);
    return p;
}

void check_index(std::size_t i, std::size_t size, const char* what)
{
    if (i >= size)
        throw IndexError(std::string(what) + " index " + std::to_string(i) + " out of range (size " +
                         std::to_string(size) + ")");
}

void check_len(std::size_t got, std::size_t want, const char* what)
{
    if (got != want)
        throw DimensionError(std::string(what) + ": buffer holds " + std::to_string(got) + " values, need " +
                             std::to_string(want));
}

channel::Environment env_of(const hl_environment* e)
{
    if (!e)
        return {};
    return {e->spreading_k, e->shipping_s, e->wind_w};
}

channel::FrequencyGrid grid_of(const hl_frequency_grid* g)
{
    if (!g)
        return {};
    return {g->f_min_khz, g->f_max_khz, g->step_khz};
}

relay::ChainScenario scenario_of(const hl_chain_scenario* s)
{
    need(s, "scenario");
    relay::ChainScenario sc;
    sc.total_distance_m = s->total_distance_m;
    sc.n_relays = s->n_relays;
    sc.packet_bits = s->packet_bits;
    sc.snr_db = s->snr_db;
    sc.rx_power_w = s->rx_power_w;
    sc.sound_speed_mps = s->sound_speed_mps;
    sc.efficiency = s->efficiency;
    sc.env = env_of(&s->env);
    sc.grid = grid_of(&s->grid);
    return sc;
}

std::vector<cs::cplx> unpack(const double* v, std::size_t n)
{
    std::vector<cs::cplx> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = {v[2 * i], v[2 * i + 1]};
    return out;
}

void pack(const std::vector<cs::cplx>& v, double* out)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[2 * i] = v[i].real();
        out[2 * i + 1] = v[i].imag();
    }
}

dfe::DfeConfig dfe_config_of(const hl_dfe_config* c)
{
    if (!c)
        return {};
    return {c->n_ff, c->n_fb, c->mu};
}

hl_detector_model model_to_c(const clutter::DetectorModel& m)
{
    return {m.threshold_theta, m.target_pfa, m.guard_cells, m.reference_cells, m.calibration_samples};
}

} // namespace

extern "C" {

const char* hl_version(void)
{
    return "0.1.0";
}

const char* hl_status_name(hl_status status)
{
    switch (status) {
    case HL_OK: return "ok";
    case HL_ERR_DOMAIN: return "domain error";
    case HL_ERR_CONFIG: return "configuration error";
    case HL_ERR_DIMENSION: return "dimension error";
    case HL_ERR_CALIBRATION: return "calibration error";
    case HL_ERR_IO: return "i/o error";
    case HL_ERR_NULL_ARGUMENT: return "null argument";
    case HL_ERR_INDEX: return "index out of range";
    case HL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* hl_last_error(void)
{
    return g_last_error.c_str();
}

hl_environment hl_environment_default(void)
{
    channel::Environment e;
    return {e.spreading_k, e.shipping_s, e.wind_w};
}

hl_frequency_grid hl_frequency_grid_default(void)
{
    channel::FrequencyGrid g;
    return {g.f_min_khz, g.f_max_khz, g.step_khz};
}

hl_status hl_thorp_absorption(double f_khz, double* db_per_km)
{
    return guarded([&] { *need(db_per_km, "db_per_km") = channel::thorp_absorption(f_khz); });
}

hl_status hl_path_loss_db(double distance_m, double f_khz, const hl_environment* env, double* loss_db)
{
    return guarded([&] { *need(loss_db, "loss_db") = channel::path_loss_db(distance_m, f_khz, env_of(env)); });
}

hl_status hl_noise_psd_db(double f_khz, const hl_environment* env, double* psd_db)
{
    return guarded([&] { *need(psd_db, "psd_db") = channel::noise_psd_db(f_khz, env_of(env)); });
}

hl_status hl_an_product_db(double distance_m, double f_khz, const hl_environment* env, double* an_db)
{
    return guarded([&] { *need(an_db, "an_db") = channel::an_product_db(distance_m, f_khz, env_of(env)); });
}

hl_status hl_optimal_frequency(double distance_m, const hl_environment* env, const hl_frequency_grid* grid,
                               double* f_opt_khz)
{
    return guarded([&] {
        *need(f_opt_khz, "f_opt_khz") = channel::optimal_frequency(distance_m, env_of(env), grid_of(grid));
    });
}

hl_status hl_band_3db(double distance_m, const hl_environment* env, const hl_frequency_grid* grid, hl_band* band)
{
    return guarded([&] {
        need(band, "band");
        auto b = channel::band_3db(distance_m, env_of(env), grid_of(grid));
        *band = {b.f_opt_khz, b.f_lo_khz, b.f_hi_khz, b.narrow ? 1 : 0};
    });
}

double hl_acoustic_power_watts(double source_level_db)
{
    return link::acoustic_power_watts(source_level_db);
}

hl_status hl_link_budget_compute(double distance_m, const hl_environment* env, double snr_db, double efficiency,
                                 const hl_frequency_grid* grid, hl_link_budget* out)
{
    return guarded([&] {
        need(out, "out");
        auto lb = link::link_budget(distance_m, env_of(env), snr_db, grid_of(grid), efficiency);
        *out = {lb.f_opt_khz,       lb.band.f_lo_khz, lb.band.f_hi_khz,   lb.bandwidth_hz,
                lb.source_level_db, lb.tx_power_w,    lb.bit_rate_bps,    lb.band.narrow ? 1 : 0};
    });
}

hl_chain_scenario hl_chain_scenario_default(void)
{
    relay::ChainScenario sc;
    hl_chain_scenario out;
    out.total_distance_m = sc.total_distance_m;
    out.n_relays = sc.n_relays;
    out.packet_bits = sc.packet_bits;
    out.snr_db = sc.snr_db;
    out.rx_power_w = sc.rx_power_w;
    out.sound_speed_mps = sc.sound_speed_mps;
    out.efficiency = sc.efficiency;
    out.env = hl_environment_default();
    out.grid = hl_frequency_grid_default();
    return out;
}

hl_status hl_hop_metrics_compute(double hop_distance_m, const hl_chain_scenario* sc, hl_hop_metrics* out)
{
    return guarded([&] {
        need(out, "out");
        auto h = relay::hop_metrics(hop_distance_m, scenario_of(sc));
        *out = {h.t_tx_s, h.delay_s, h.energy_j, h.tx_power_w, h.bit_rate_bps};
    });
}

hl_status hl_chain_delay(const hl_chain_scenario* sc, double* delay_s)
{
    return guarded([&] { *need(delay_s, "delay_s") = relay::chain_delay(scenario_of(sc)); });
}

hl_status hl_chain_energy(const hl_chain_scenario* sc, double* energy_j)
{
    return guarded([&] { *need(energy_j, "energy_j") = relay::chain_energy(scenario_of(sc)); });
}

hl_status hl_relay_sweep(const hl_chain_scenario* sc, int n_max, hl_relay_report** report)
{
    return guarded([&] {
        need(report, "report");
        *report = nullptr;
        auto r = relay::sweep_relays(scenario_of(sc), n_max);
        *report = new hl_relay_report{std::move(r)};
    });
}

size_t hl_relay_report_size(const hl_relay_report* report)
{
    return report ? report->report.rows.size() : 0;
}

hl_status hl_relay_report_row(const hl_relay_report* report, size_t index, hl_relay_row* row)
{
    return guarded([&] {
        need(report, "report");
        need(row, "row");
        check_index(index, report->report.rows.size(), "relay row");
        const auto& r = report->report.rows[index];
        *row = {r.n, r.hop_distance_m, r.end_to_end_delay_s, r.total_energy_j, r.hop_tx_power_w, r.hop_bit_rate_bps};
    });
}

hl_status hl_relay_report_summary(const hl_relay_report* report, double* delay_spread, int* energy_argmin)
{
    return guarded([&] {
        need(report, "report");
        if (delay_spread)
            *delay_spread = report->report.delay_spread();
        if (energy_argmin)
            *energy_argmin = report->report.energy_argmin();
    });
}

void hl_relay_report_free(hl_relay_report* report)
{
    delete report;
}

hl_status hl_midpoint_comparison(const hl_chain_scenario* sc, double* energy_reduction_pct, double* delay_increase_pct)
{
    return guarded([&] {
        auto m = relay::midpoint_comparison(scenario_of(sc));
        *need(energy_reduction_pct, "energy_reduction_pct") = m.energy_reduction_pct;
        *need(delay_increase_pct, "delay_increase_pct") = m.delay_increase_pct;
    });
}

hl_status hl_relaying_threshold(const hl_chain_scenario* sc, double d_lo_m, double d_hi_m, int n_max, double tol_m,
                                hl_relay_threshold* out)
{
    return guarded([&] {
        need(out, "out");
        auto t = relay::relaying_threshold(scenario_of(sc), d_lo_m, d_hi_m, n_max, tol_m);
        *out = {t.distance_m, t.below_m, t.above_m, t.argmin_above, t.iterations};
    });
}

hl_status hl_select_medium(double distance_m, hl_medium_context context, hl_medium* media, size_t capacity,
                           size_t* count, char* reason, size_t reason_capacity)
{
    return guarded([&] {
        need(count, "count");
        if (capacity > 0)
            need(media, "media");
        if (context < HL_CONTEXT_ABOVE_SURFACE || context > HL_CONTEXT_CLEAR_WATER_LOS)
            throw DomainError("unknown medium context " + std::to_string(static_cast<int>(context)));
        auto sel = relay::select_medium(distance_m, static_cast<relay::MediumContext>(context));
        *count = sel.feasible.size();
        for (std::size_t i = 0; i < std::min(capacity, sel.feasible.size()); ++i)
            media[i] = static_cast<hl_medium>(sel.feasible[i].medium);
        if (reason && reason_capacity > 0) {
            std::size_t n = std::min(reason_capacity - 1, sel.reason.size());
            std::memcpy(reason, sel.reason.data(), n);
            reason[n] = '\0';
        }
    });
}

const char* hl_medium_name(hl_medium medium)
{
    switch (medium) {
    case HL_MEDIUM_EM: return "em";
    case HL_MEDIUM_ACOUSTIC: return "acoustic";
    case HL_MEDIUM_OPTICAL: return "optical";
    case HL_MEDIUM_MI: return "mi";
    }
    return "unknown";
}

hl_status hl_sparse_channel_generate(size_t n, size_t s_taps, double decay_taps, uint64_t seed,
                                     hl_sparse_channel** channel)
{
    return guarded([&] {
        need(channel, "channel");
        *channel = nullptr;
        auto ch = cs::generate_sparse_channel(n, s_taps, decay_taps, seed);
        *channel = new hl_sparse_channel{std::move(ch.taps)};
    });
}

hl_status hl_sparse_channel_from_taps(const double* taps, size_t n, hl_sparse_channel** channel)
{
    return guarded([&] {
        need(channel, "channel");
        *channel = nullptr;
        if (n > 0)
            need(taps, "taps");
        *channel = new hl_sparse_channel{unpack(taps, n)};
    });
}

size_t hl_sparse_channel_length(const hl_sparse_channel* channel)
{
    return channel ? channel->taps.size() : 0;
}

hl_status hl_sparse_channel_taps(const hl_sparse_channel* channel, double* taps, size_t n)
{
    return guarded([&] {
        need(channel, "channel");
        need(taps, "taps");
        check_len(n, channel->taps.size(), "channel taps");
        pack(channel->taps, taps);
    });
}

hl_status hl_sparse_channel_check(const hl_sparse_channel* channel, size_t* nonzero_taps, double* top_energy_fraction,
                                  int* ok)
{
    return guarded([&] {
        need(channel, "channel");
        auto r = cs::check_sparsity(channel->taps);
        if (nonzero_taps)
            *nonzero_taps = r.nonzero_taps;
        if (top_energy_fraction)
            *top_energy_fraction = r.top_energy_fraction;
        if (ok)
            *ok = r.ok ? 1 : 0;
    });
}

void hl_sparse_channel_free(hl_sparse_channel* channel)
{
    delete channel;
}

hl_status hl_pilot_matrix_generate(size_t m, size_t n, hl_pilot_scheme scheme, uint64_t seed, hl_pilot_matrix** pilots)
{
    return guarded([&] {
        need(pilots, "pilots");
        *pilots = nullptr;
        if (scheme < HL_PILOTS_GAUSSIAN || scheme > HL_PILOTS_IDENTITY)
            throw ConfigError("unknown pilot scheme " + std::to_string(static_cast<int>(scheme)));
        *pilots = new hl_pilot_matrix{cs::PilotMatrix::generate(m, n, static_cast<cs::PilotScheme>(scheme), seed)};
    });
}

size_t hl_pilot_matrix_rows(const hl_pilot_matrix* pilots)
{
    return pilots ? pilots->phi.rows() : 0;
}

size_t hl_pilot_matrix_cols(const hl_pilot_matrix* pilots)
{
    return pilots ? pilots->phi.cols() : 0;
}

void hl_pilot_matrix_free(hl_pilot_matrix* pilots)
{
    delete pilots;
}

hl_status hl_measure(const hl_sparse_channel* channel, const hl_pilot_matrix* pilots, double noise_std,
                     uint64_t noise_seed, double* y, size_t m)
{
    return guarded([&] {
        need(channel, "channel");
        need(pilots, "pilots");
        check_len(m, pilots->phi.rows(), "measurements");
        if (m > 0)
            need(y, "y");
        pack(cs::measure(channel->taps, pilots->phi, noise_std, noise_seed), y);
    });
}

hl_status hl_omp_reconstruct(const double* y, size_t m, const hl_pilot_matrix* pilots, size_t max_sparsity,
                             double residual_tol, double* estimate, size_t n, hl_omp_info* info)
{
    return guarded([&] {
        need(pilots, "pilots");
        need(estimate, "estimate");
        if (m > 0)
            need(y, "y");
        check_len(n, pilots->phi.cols(), "estimate");
        auto yv = unpack(y, m);
        auto stop = cs::OmpStop::defaults(n, yv);
        if (max_sparsity > 0)
            stop.max_sparsity = max_sparsity;
        if (residual_tol >= 0.0)
            stop.residual_tol = residual_tol;
        auto r = cs::omp_reconstruct(yv, pilots->phi, stop);
        pack(r.estimate, estimate);
        if (info)
            *info = {r.iterations, r.residual_norms.empty() ? 0.0 : r.residual_norms.back(), r.rank_deficient ? 1 : 0};
    });
}

hl_status hl_nmse(const double* truth, const double* estimate, size_t n, double* value)
{
    return guarded([&] {
        need(value, "value");
        if (n > 0) {
            need(truth, "truth");
            need(estimate, "estimate");
        }
        *value = cs::nmse(unpack(truth, n), unpack(estimate, n));
    });
}

hl_status hl_pilot_savings_curve(size_t n, size_t s, const size_t* m_list, size_t m_count, size_t trials,
                                 uint64_t seed, double noise_std, double decay_taps, hl_pilot_scheme scheme,
                                 hl_pilot_savings_row* rows)
{
    return guarded([&] {
        if (m_count > 0) {
            need(m_list, "m_list");
            need(rows, "rows");
        }
        if (scheme < HL_PILOTS_GAUSSIAN || scheme > HL_PILOTS_IDENTITY)
            throw ConfigError("unknown pilot scheme " + std::to_string(static_cast<int>(scheme)));
        cs::PilotSavingsOptions opts{noise_std, decay_taps, static_cast<cs::PilotScheme>(scheme)};
        std::vector<std::size_t> ms(m_list, m_list + m_count);
        auto curve = cs::pilot_savings_curve(n, s, ms, trials, seed, opts);
        for (std::size_t i = 0; i < curve.size(); ++i)
            rows[i] = {curve[i].m, curve[i].median_nmse, curve[i].exact_fraction};
    });
}

hl_dfe_config hl_dfe_config_default(void)
{
    dfe::DfeConfig c;
    return {c.n_ff, c.n_fb, c.mu};
}

hl_status hl_dfe_create(const hl_dfe_config* config, const double* estimate, size_t estimate_len, double noise_var,
                        uint64_t seed, hl_dfe** out)
{
    return guarded([&] {
        need(out, "dfe");
        *out = nullptr;
        auto cfg = dfe_config_of(need(config, "config"));
        if (estimate)
            *out = new hl_dfe{dfe::DfeState::from_channel_estimate(cfg, unpack(estimate, estimate_len), noise_var)};
        else
            *out = new hl_dfe{dfe::DfeState::cold_start(cfg, seed)};
    });
}

hl_status hl_dfe_prime(hl_dfe* d, double in_re, double in_im)
{
    return guarded([&] { need(d, "dfe")->state.prime({in_re, in_im}); });
}

hl_status hl_dfe_step(hl_dfe* d, double in_re, double in_im, const double* desired, double* decision,
                      double* error_re_im)
{
    return guarded([&] {
        need(d, "dfe");
        std::optional<double> want;
        if (desired)
            want = *desired;
        auto r = d->state.step({in_re, in_im}, want);
        if (decision)
            *decision = r.decision;
        if (error_re_im) {
            error_re_im[0] = r.error.real();
            error_re_im[1] = r.error.imag();
        }
    });
}

hl_status hl_dfe_set_training(hl_dfe* d, int training)
{
    return guarded([&] {
        need(d, "dfe")->state.set_mode(training ? dfe::Mode::training : dfe::Mode::decision_directed);
    });
}

size_t hl_dfe_decision_delay(const hl_dfe* d)
{
    return d ? d->state.decision_delay() : 0;
}

hl_status hl_dfe_taps(const hl_dfe* d, double* ff, size_t n_ff, double* fb, size_t n_fb)
{
    return guarded([&] {
        need(d, "dfe");
        auto f = d->state.ff_taps();
        auto b = d->state.fb_taps();
        check_len(n_ff, f.size(), "feed-forward taps");
        check_len(n_fb, b.size(), "feedback taps");
        if (n_ff > 0)
            pack({f.begin(), f.end()}, need(ff, "ff"));
        if (n_fb > 0)
            pack({b.begin(), b.end()}, need(fb, "fb"));
    });
}

void hl_dfe_free(hl_dfe* d)
{
    delete d;
}

hl_status hl_ber_sim(const double* channel, size_t channel_len, double snr_db, size_t n_train, size_t n_data,
                     const hl_dfe_config* config, const double* estimate, size_t estimate_len,
                     double estimate_noise_var, uint64_t seed, hl_ber_result** result)
{
    return guarded([&] {
        need(result, "result");
        *result = nullptr;
        if (channel_len > 0)
            need(channel, "channel");
        dfe::BerSimOptions opts;
        opts.dfe = dfe_config_of(config);
        if (estimate)
            opts.channel_estimate = unpack(estimate, estimate_len);
        opts.estimate_noise_var = estimate_noise_var;
        auto r = dfe::ber_sim(unpack(channel, channel_len), snr_db, n_train, n_data, opts, seed);
        *result = new hl_ber_result{std::move(r)};
    });
}

double hl_ber_result_ber(const hl_ber_result* r)
{
    return r ? r->result.ber : 0.0;
}

size_t hl_ber_result_errors(const hl_ber_result* r)
{
    return r ? r->result.errors : 0;
}

size_t hl_ber_result_symbols(const hl_ber_result* r)
{
    return r ? r->result.symbols : 0;
}

size_t hl_ber_result_training_len(const hl_ber_result* r)
{
    return r ? r->result.training_mse.size() : 0;
}

hl_status hl_ber_result_training_mse(const hl_ber_result* r, double* mse, size_t len)
{
    return guarded([&] {
        need(r, "result");
        check_len(len, r->result.training_mse.size(), "training mse");
        if (len > 0)
            std::copy(r->result.training_mse.begin(), r->result.training_mse.end(), need(mse, "mse"));
    });
}

void hl_ber_result_free(hl_ber_result* r)
{
    delete r;
}

double hl_bpsk_awgn_ber(double snr_db)
{
    return dfe::bpsk_awgn_ber(snr_db);
}

hl_init_comparison_options hl_init_comparison_options_default(void)
{
    dfe::InitComparisonOptions o;
    return {o.channel_length, o.sparse_taps, o.decay_taps, o.snr_db, o.pilots,
            o.n_train,        o.n_data,      {o.dfe.n_ff, o.dfe.n_fb, o.dfe.mu},
            o.rule.mse_threshold, o.rule.window, o.runs};
}

hl_status hl_compare_initialization(const hl_init_comparison_options* options, uint64_t seed,
                                    hl_init_comparison** result)
{
    return guarded([&] {
        need(result, "result");
        *result = nullptr;
        need(options, "options");
        dfe::InitComparisonOptions o;
        o.channel_length = options->channel_length;
        o.sparse_taps = options->sparse_taps;
        o.decay_taps = options->decay_taps;
        o.snr_db = options->snr_db;
        o.pilots = options->pilots;
        o.n_train = options->n_train;
        o.n_data = options->n_data;
        o.dfe = dfe_config_of(&options->dfe);
        o.rule = {options->mse_threshold, options->mse_window};
        o.runs = options->runs;
        *result = new hl_init_comparison{dfe::compare_initialization(o, seed)};
    });
}

size_t hl_init_comparison_size(const hl_init_comparison* r)
{
    return r ? r->result.runs.size() : 0;
}

hl_status hl_init_comparison_run_at(const hl_init_comparison* r, size_t index, hl_init_comparison_run* run)
{
    return guarded([&] {
        need(r, "result");
        need(run, "run");
        check_index(index, r->result.runs.size(), "comparison run");
        const auto& x = r->result.runs[index];
        *run = {x.cold_symbols,       x.cs_symbols, x.cold_reached ? 1 : 0, x.cs_reached ? 1 : 0, x.estimate_nmse,
                x.cold_ber,           x.cs_ber};
    });
}

hl_status hl_init_comparison_summary(const hl_init_comparison* r, double* median_cold, double* median_cs,
                                     double* reduction)
{
    return guarded([&] {
        need(r, "result");
        if (median_cold)
            *median_cold = r->result.median_cold_symbols;
        if (median_cs)
            *median_cs = r->result.median_cs_symbols;
        if (reduction)
            *reduction = r->result.reduction;
    });
}

hl_status hl_init_comparison_mse(const hl_init_comparison* r, int cs, double* mse, size_t len)
{
    return guarded([&] {
        need(r, "result");
        const auto& curve = cs ? r->result.cs_mse : r->result.cold_mse;
        check_len(len, curve.size(), "mse curve");
        if (len > 0)
            std::copy(curve.begin(), curve.end(), need(mse, "mse"));
    });
}

void hl_init_comparison_free(hl_init_comparison* r)
{
    delete r;
}

hl_status hl_clutter_generate(size_t cells, size_t pulses, double nu, uint64_t seed, hl_polarization pol,
                              hl_clutter_frame** frame)
{
    return guarded([&] {
        need(frame, "frame");
        *frame = nullptr;
        if (pol < HL_POL_HH || pol > HL_POL_VV)
            throw DomainError("unknown polarization " + std::to_string(static_cast<int>(pol)));
        *frame = new hl_clutter_frame{
            clutter::gen_k_clutter(cells, pulses, nu, seed, static_cast<clutter::Polarization>(pol))};
    });
}

hl_status hl_clutter_inject_target(const hl_clutter_frame* frame, size_t cell, double scr_db, uint64_t seed,
                                   double doppler, hl_clutter_frame** out)
{
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        need(frame, "frame");
        *out = new hl_clutter_frame{clutter::inject_target(frame->frame, cell, scr_db, seed, doppler)};
    });
}

size_t hl_clutter_cells(const hl_clutter_frame* f)
{
    return f ? f->frame.cells() : 0;
}

size_t hl_clutter_pulses(const hl_clutter_frame* f)
{
    return f ? f->frame.pulses() : 0;
}

double hl_clutter_mean_power(const hl_clutter_frame* f)
{
    return f ? f->frame.mean_power() : 0.0;
}

hl_status hl_clutter_cell(const hl_clutter_frame* f, size_t cell, float* samples, size_t pulses)
{
    return guarded([&] {
        need(f, "frame");
        check_index(cell, f->frame.cells(), "cell");
        check_len(pulses, f->frame.pulses(), "cell samples");
        auto c = f->frame.cell(cell);
        if (pulses > 0)
            need(samples, "samples");
        for (std::size_t k = 0; k < c.size(); ++k) {
            samples[2 * k] = c[k].real();
            samples[2 * k + 1] = c[k].imag();
        }
    });
}

hl_status hl_clutter_write(const hl_clutter_frame* f, const char* path)
{
    return guarded([&] { clutter::write_frame(need(f, "frame")->frame, need(path, "path")); });
}

hl_status hl_clutter_read(const char* path, hl_clutter_frame** frame)
{
    return guarded([&] {
        need(frame, "frame");
        *frame = nullptr;
        *frame = new hl_clutter_frame{clutter::read_frame(need(path, "path"))};
    });
}

void hl_clutter_free(hl_clutter_frame* f)
{
    delete f;
}

hl_status hl_raa_feature(const hl_clutter_frame* f, size_t cut, size_t guard, size_t n_ref, double* raa)
{
    return guarded([&] { *need(raa, "raa") = clutter::raa_feature(need(f, "frame")->frame, cut, guard, n_ref); });
}

hl_status hl_calibrate_threshold(const hl_clutter_frame* const* frames, size_t count, double target_pfa, size_t guard,
                                 size_t n_ref, hl_detector_model* model)
{
    return guarded([&] {
        need(model, "model");
        if (count > 0)
            need(frames, "frames");
        clutter::ThresholdCalibrator cal(guard, n_ref);
        for (std::size_t i = 0; i < count; ++i)
            cal.add_frame(need(frames[i], "frames[i]")->frame);
        *model = model_to_c(cal.finish(target_pfa));
    });
}

hl_status hl_detect(const hl_clutter_frame* f, size_t cut, const hl_detector_model* model, int* target)
{
    return guarded([&] {
        need(model, "model");
        clutter::DetectorModel m{model->threshold_theta, model->target_pfa, model->guard_cells,
                                 model->reference_cells, model->calibration_samples};
        *need(target, "target") = clutter::detect(need(f, "frame")->frame, cut, m) ? 1 : 0;
    });
}

hl_roc_options hl_roc_options_default(void)
{
    clutter::RocOptions o;
    return {o.cells, o.pulses, o.cut, o.guard_cells, o.reference_cells, o.calibration_samples};
}

hl_status hl_roc_eval(double nu, const double* scr_db, size_t scr_count, double target_pfa, size_t trials,
                      uint64_t seed, const hl_roc_options* options, hl_roc_row* rows, hl_detector_model* model)
{
    return guarded([&] {
        if (scr_count > 0) {
            need(scr_db, "scr_db");
            need(rows, "rows");
        }
        clutter::RocOptions o;
        if (options)
            o = {options->cells,       options->pulses,          options->cut,
                 options->guard_cells, options->reference_cells, options->calibration_samples};
        std::vector<double> scr(scr_db, scr_db + scr_count);
        auto r = clutter::roc_eval(nu, scr, target_pfa, trials, seed, o);
        for (std::size_t i = 0; i < r.rows.size(); ++i)
            rows[i] = {r.rows[i].scr_db, r.rows[i].pd, r.rows[i].pfa};
        if (model)
            *model = model_to_c(r.model);
    });
}

hl_status hl_binomial_ci95(size_t k, size_t n, double* lo, double* hi)
{
    return guarded([&] {
        auto ci = clutter::binomial_ci95(k, n);
        *need(lo, "lo") = ci.lo;
        *need(hi, "hi") = ci.hi;
    });
}

uint64_t hl_derive_seed(uint64_t global_seed, const char* stream, uint64_t trial)
{
    return derive_seed(global_seed, stream ? stream : "", trial);
}

} // extern "C"
