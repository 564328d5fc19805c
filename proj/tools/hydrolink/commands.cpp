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

#include "commands.hpp"

#include "csv.hpp"

#include <hydrolink/hydrolink.h>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iostream>

namespace hlcli {

namespace {

void check(hl_status st, std::string_view what)
{
    if (st != HL_OK)
        throw RunError(fmt::format("{} failed ({}): {}", what, hl_status_name(st), hl_last_error()));
}

std::string num(double v)
{
    return fmt::format("{}", v);
}

std::string num(std::size_t v)
{
    return fmt::format("{}", v);
}

std::string num(int v)
{
    return fmt::format("{}", v);
}

CsvTable table(const RunContext& ctx, std::vector<std::string> columns)
{
    CsvTable t(std::move(columns));
    t.meta("hydrolink", hl_version());
    t.meta("command", ctx.command);
    t.meta("seed", fmt::format("{}", ctx.config.seed()));
    t.meta("config_hash", fmt::format("{:016x}", ctx.config.hash()));
    t.meta("config", ctx.config.canonical());
    return t;
}

std::filesystem::path emit(const RunContext& ctx, const CsvTable& t, std::string_view file)
{
    const auto path = ctx.out_dir / file;
    t.write(path);
    std::cout << ctx.command << ": wrote " << path.string() << " (" << t.rows() << " rows)\n";
    return path;
}

std::uint64_t stream_seed(const RunContext& ctx, const char* stream, std::uint64_t trial = 0)
{
    return hl_derive_seed(ctx.config.seed(), stream, trial);
}

hl_environment environment(const ScenarioConfig& c)
{
    return {c.real("environment.spreading_k"), c.real("environment.shipping_s"), c.real("environment.wind_w")};
}

hl_frequency_grid grid(const ScenarioConfig& c)
{
    return {c.real("grid.f_min_khz"), c.real("grid.f_max_khz"), c.real("grid.step_khz")};
}

std::size_t to_size(std::int64_t v)
{
    return static_cast<std::size_t>(v);
}

std::vector<std::filesystem::path> run_link_budget(const RunContext& ctx)
{
    const auto& c = ctx.config;
    const hl_environment env = environment(c);
    const hl_frequency_grid g = grid(c);
    auto t = table(ctx, {"distance_km", "f_opt_khz", "f_lo_khz", "f_hi_khz", "bandwidth_khz", "source_level_db",
                         "tx_power_w", "bit_rate_bps", "narrow_band"});
    for (double d : c.reals("link.distances_km")) {
        hl_link_budget lb;
        check(hl_link_budget_compute(d * 1e3, &env, c.real("link.snr_db"), c.real("link.efficiency"), &g, &lb),
              "link budget");
        t.row({num(d), num(lb.f_opt_khz), num(lb.f_lo_khz), num(lb.f_hi_khz), num(lb.bandwidth_hz / 1e3),
               num(lb.source_level_db), num(lb.tx_power_w), num(lb.bit_rate_bps), num(lb.narrow_band)});
    }
    return {emit(ctx, t, "link_budget.csv")};
}

hl_chain_scenario chain_scenario(const ScenarioConfig& c)
{
    hl_chain_scenario sc = hl_chain_scenario_default();
    sc.packet_bits = c.real("chain.packet_bits");
    sc.snr_db = c.real("chain.snr_db");
    sc.rx_power_w = c.real("chain.rx_power_w");
    sc.sound_speed_mps = c.real("chain.sound_speed_mps");
    sc.efficiency = c.real("chain.efficiency");
    sc.env = environment(c);
    sc.grid = grid(c);
    return sc;
}

std::vector<std::filesystem::path> run_relay_sweep(const RunContext& ctx)
{
    const auto& c = ctx.config;
    hl_chain_scenario sc = chain_scenario(c);
    const int n_max = static_cast<int>(c.integer("chain.n_max"));

    auto sweep = table(ctx, {"distance_km", "n", "hop_distance_m", "end_to_end_delay_s", "total_energy_j",
                             "hop_tx_power_w", "hop_bit_rate_bps"});
    auto summary = table(ctx, {"distance_km", "delay_spread", "energy_argmin", "midpoint_energy_reduction_pct",
                               "midpoint_delay_increase_pct"});
    for (double d : c.reals("chain.distances_km")) {
        sc.total_distance_m = d * 1e3;
        sc.n_relays = 0;
        hl_relay_report* report = nullptr;
        check(hl_relay_sweep(&sc, n_max, &report), "relay sweep");
        double spread = 0.0;
        int argmin = 0;
        try {
            for (std::size_t i = 0; i < hl_relay_report_size(report); ++i) {
                hl_relay_row r;
                check(hl_relay_report_row(report, i, &r), "relay row");
                sweep.row({num(d), num(r.n), num(r.hop_distance_m), num(r.end_to_end_delay_s), num(r.total_energy_j),
                           num(r.hop_tx_power_w), num(r.hop_bit_rate_bps)});
            }
            check(hl_relay_report_summary(report, &spread, &argmin), "relay summary");
        } catch (...) {
            hl_relay_report_free(report);
            throw;
        }
        hl_relay_report_free(report);
        double reduction = 0.0;
        double increase = 0.0;
        check(hl_midpoint_comparison(&sc, &reduction, &increase), "midpoint comparison");
        summary.row({num(d), num(spread), num(argmin), num(reduction), num(increase)});
    }

    auto threshold = table(ctx, {"bracket_lo_km", "bracket_hi_km", "found", "threshold_km", "below_km", "above_km",
                                 "argmin_above", "iterations"});
    const double lo = c.real("chain.threshold_lo_km");
    const double hi = c.real("chain.threshold_hi_km");
    hl_relay_threshold th;
    const hl_status st = hl_relaying_threshold(&sc, lo * 1e3, hi * 1e3, n_max, 1.0, &th);
    if (st == HL_OK) {
        threshold.row({num(lo), num(hi), "true", num(th.distance_m / 1e3), num(th.below_m / 1e3),
                       num(th.above_m / 1e3), num(th.argmin_above), num(th.iterations)});
    } else if (st == HL_ERR_CONFIG) {
        // no sign change of the energy argmin inside the bracket
        threshold.meta("note", hl_last_error());
        threshold.row({num(lo), num(hi), "false", "", "", "", "", ""});
    } else {
        check(st, "relaying threshold");
    }
    return {emit(ctx, sweep, "relay_sweep.csv"), emit(ctx, summary, "relay_summary.csv"),
            emit(ctx, threshold, "relay_threshold.csv")};
}

std::vector<std::filesystem::path> run_cs_bench(const RunContext& ctx)
{
    const auto& c = ctx.config;
    const std::string& scheme_name = c.text("cs.pilots");
    const hl_pilot_scheme scheme = scheme_name == "partial_fourier" ? HL_PILOTS_PARTIAL_FOURIER
                                   : scheme_name == "identity"      ? HL_PILOTS_IDENTITY
                                                                    : HL_PILOTS_GAUSSIAN;
    std::vector<std::size_t> ms;
    for (double m : c.reals("cs.m_list"))
        ms.push_back(static_cast<std::size_t>(m));
    std::vector<hl_pilot_savings_row> rows(ms.size());
    const std::size_t n = to_size(c.integer("cs.n"));
    check(hl_pilot_savings_curve(n, to_size(c.integer("cs.s")), ms.data(), ms.size(), to_size(c.integer("cs.trials")),
                                 stream_seed(ctx, "cs-bench"), c.real("cs.noise_std"), c.real("cs.decay_taps"), scheme,
                                 rows.data()),
          "pilot savings curve");
    auto t = table(ctx, {"m", "pilot_fraction", "median_nmse", "exact_fraction"});
    for (const auto& r : rows)
        t.row({num(r.m), num(static_cast<double>(r.m) / static_cast<double>(n)), num(r.median_nmse),
               num(r.exact_fraction)});
    return {emit(ctx, t, "cs_bench.csv")};
}

hl_init_comparison_options comparison_options(const ScenarioConfig& c)
{
    hl_init_comparison_options o = hl_init_comparison_options_default();
    o.channel_length = to_size(c.integer("dfe.channel_length"));
    o.sparse_taps = to_size(c.integer("dfe.sparse_taps"));
    o.decay_taps = c.real("dfe.decay_taps");
    o.snr_db = c.real("dfe.snr_db");
    o.pilots = to_size(c.integer("dfe.pilots"));
    o.n_train = to_size(c.integer("dfe.n_train"));
    o.n_data = to_size(c.integer("dfe.n_data"));
    o.dfe = {to_size(c.integer("dfe.n_ff")), to_size(c.integer("dfe.n_fb")), c.real("dfe.mu")};
    o.mse_threshold = c.real("dfe.mse_threshold");
    o.mse_window = to_size(c.integer("dfe.mse_window"));
    o.runs = to_size(c.integer("dfe.runs"));
    return o;
}

struct ComparisonHandle {
    hl_init_comparison* p = nullptr;
    ~ComparisonHandle() { hl_init_comparison_free(p); }
};

std::vector<std::filesystem::path> run_dfe_ber(const RunContext& ctx)
{
    const auto& c = ctx.config;
    const hl_init_comparison_options base = comparison_options(c);

    auto ber = table(ctx, {"snr_db", "ber_cold", "ber_cs", "ber_awgn_theory"});
    for (double snr : c.reals("dfe.ber_snr_db")) {
        hl_init_comparison_options o = base;
        o.snr_db = snr;
        ComparisonHandle h;
        check(hl_compare_initialization(&o, stream_seed(ctx, "dfe-ber.ber"), &h.p), "BER sweep");
        double cold = 0.0;
        double cs = 0.0;
        const std::size_t runs = hl_init_comparison_size(h.p);
        for (std::size_t i = 0; i < runs; ++i) {
            hl_init_comparison_run r;
            check(hl_init_comparison_run_at(h.p, i, &r), "BER run");
            cold += r.cold_ber / static_cast<double>(runs);
            cs += r.cs_ber / static_cast<double>(runs);
        }
        ber.row({num(snr), num(cold), num(cs), num(hl_bpsk_awgn_ber(snr))});
    }

    ComparisonHandle h;
    check(hl_compare_initialization(&base, stream_seed(ctx, "dfe-ber.compare"), &h.p), "initialization comparison");

    std::vector<double> cold_mse(base.n_train);
    std::vector<double> cs_mse(base.n_train);
    check(hl_init_comparison_mse(h.p, 0, cold_mse.data(), cold_mse.size()), "MSE curve");
    check(hl_init_comparison_mse(h.p, 1, cs_mse.data(), cs_mse.size()), "MSE curve");
    const std::size_t block = to_size(c.integer("dfe.mse_block"));
    auto mse = table(ctx, {"symbol", "mse_cold", "mse_cs"});
    for (std::size_t k = 0; k < base.n_train; k += block) {
        const std::size_t end = std::min(base.n_train, k + block);
        double a = 0.0;
        double b = 0.0;
        for (std::size_t i = k; i < end; ++i) {
            a += cold_mse[i];
            b += cs_mse[i];
        }
        const auto len = static_cast<double>(end - k);
        mse.row({num(k), num(a / len), num(b / len)});
    }

    double med_cold = 0.0;
    double med_cs = 0.0;
    double reduction = 0.0;
    check(hl_init_comparison_summary(h.p, &med_cold, &med_cs, &reduction), "comparison summary");
    auto conv = table(ctx, {"run", "cold_symbols", "cs_symbols", "cold_reached", "cs_reached", "estimate_nmse",
                            "cold_ber", "cs_ber"});
    conv.meta("median_cold_symbols", num(med_cold));
    conv.meta("median_cs_symbols", num(med_cs));
    conv.meta("training_reduction", num(reduction));
    for (std::size_t i = 0; i < hl_init_comparison_size(h.p); ++i) {
        hl_init_comparison_run r;
        check(hl_init_comparison_run_at(h.p, i, &r), "comparison run");
        conv.row({num(i), num(r.cold_symbols), num(r.cs_symbols), r.cold_reached ? "true" : "false",
                  r.cs_reached ? "true" : "false", num(r.estimate_nmse), num(r.cold_ber), num(r.cs_ber)});
    }
    return {emit(ctx, ber, "dfe_ber.csv"), emit(ctx, mse, "dfe_mse.csv"), emit(ctx, conv, "dfe_convergence.csv")};
}

std::vector<std::filesystem::path> run_clutter_roc(const RunContext& ctx)
{
    const auto& c = ctx.config;
    hl_roc_options o = hl_roc_options_default();
    o.cells = to_size(c.integer("detector.cells"));
    o.pulses = to_size(c.integer("detector.pulses"));
    o.cut = to_size(c.integer("detector.cut"));
    o.guard_cells = to_size(c.integer("detector.guard_cells"));
    o.reference_cells = to_size(c.integer("detector.reference_cells"));
    o.calibration_samples = to_size(c.integer("detector.calibration_samples"));
    const std::vector<double> scr = c.reals("detector.scr_db");
    const std::size_t trials = to_size(c.integer("detector.trials"));
    const double pfa = c.real("detector.pfa");

    auto t = table(ctx, {"nu", "scr_db", "pd", "pfa", "pfa_ci_lo", "pfa_ci_hi", "threshold"});
    const std::vector<double> nus = c.reals("detector.nu_list");
    for (std::size_t i = 0; i < nus.size(); ++i) {
        std::vector<hl_roc_row> rows(scr.size());
        hl_detector_model model;
        check(hl_roc_eval(nus[i], scr.data(), scr.size(), pfa, trials, stream_seed(ctx, "clutter-roc", i), &o,
                          rows.data(), &model),
              "ROC evaluation");
        for (const auto& r : rows) {
            const auto k = static_cast<std::size_t>(std::llround(r.pfa * static_cast<double>(trials)));
            double lo = 0.0;
            double hi = 0.0;
            check(hl_binomial_ci95(k, trials, &lo, &hi), "binomial interval");
            t.row({num(nus[i]), num(r.scr_db), num(r.pd), num(r.pfa), num(lo), num(hi), num(model.threshold_theta)});
        }
    }
    return {emit(ctx, t, "clutter_roc.csv")};
}

} // namespace

const std::vector<Command>& commands()
{
    static const std::vector<Command> list = {
        {"link-budget", "optimal band, source level and transmit power over distance", run_link_budget},
        {"relay-sweep", "end-to-end delay and energy against relay count", run_relay_sweep},
        {"cs-bench", "OMP recovery against pilot count", run_cs_bench},
        {"dfe-ber", "BER and training MSE, cold start vs channel-estimate start", run_dfe_ber},
        {"clutter-roc", "RAA detector Pd / Pfa on K-distributed clutter", run_clutter_roc},
    };
    return list;
}

const Command* find_command(std::string_view name)
{
    for (const auto& c : commands())
        if (c.name == name)
            return &c;
    return nullptr;
}

} // namespace hlcli
