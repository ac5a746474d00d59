// SPDX-License-Identifier: Apache-2.0
//
// rhsim: switch-controlled reconfigurable holographic surface link simulator
// Copyright (C) 2026 rhsim contributors
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

#ifndef rhsim_sweep_H
#define rhsim_sweep_H

#include <atomic>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rhsim/architectures.hpp"
#include "rhsim/scenario.hpp"

namespace rhsim
{

// One CSV row: a single trial of one architecture at one sweep point, or
// the flagged mean over that point's trials.
struct SweepRecord
{
    std::string axis;
    double axis_value = 0.0;
    std::string architecture;
    int trial = 0; // -1 on mean rows
    bool is_mean = false;
    double se_bit_per_hz = 0.0;
    double ee_bit_per_j = 0.0;
    double rho_w = 0.0;
    std::vector<double> shares;
    std::uint64_t seed = 0;
    std::string config_hash;
};

namespace detail
{

// The scenario of one sweep point, plus the fixed transmit power for SNR
// sweeps (those do not run the power optimization).
struct PointSetup
{
    Scenario sc;
    std::optional<double> fixed_rho_w;
};

inline PointSetup apply_axis(const Scenario &base, double value)
{
    PointSetup pt{base, std::nullopt};
    switch (base.sweep_axis)
    {
    case SweepAxis::SnrDb:
        // average SNR = rho * mean_large_scale / noise
        pt.fixed_rho_w = db_to_linear(value) * dbm_to_watt(base.noise_dbm) /
                         db_to_linear(base.mean_large_scale_db);
        break;
    case SweepAxis::PmaxDbm:
        pt.sc.pmax_dbm = value;
        break;
    case SweepAxis::Epsilon:
        pt.sc.epsilon_t = value;
        pt.sc.epsilon_r = value;
        break;
    case SweepAxis::RfChains:
        pt.sc.rf_chains = static_cast<int>(value);
        break;
    case SweepAxis::Users:
        pt.sc.users = static_cast<int>(value);
        break;
    case SweepAxis::Elements:
        pt.sc.nx = static_cast<int>(std::sqrt(value));
        pt.sc.ny = pt.sc.nx;
        break;
    case SweepAxis::Iterations:
        pt.sc.alternation_rounds = static_cast<int>(value);
        break;
    }
    return pt;
}

inline DesignOptions design_options(const PointSetup &pt)
{
    DesignOptions opts;
    opts.p_max_w = dbm_to_watt(pt.sc.pmax_dbm);
    opts.rounds = pt.sc.alternation_rounds;
    opts.gradient = pt.sc.gradient_options();
    opts.kappa = pt.sc.kappa;
    opts.hwi_aware = pt.sc.hwi_mode == HwiMode::Consider;
    opts.fixed_rho_w = pt.fixed_rho_w;
    opts.dft_2pi = pt.sc.dft_use_2pi;
    opts.spgm_upsilon_weighted = pt.sc.spgm_upsilon_weighted;
    return opts;
}

inline std::string format_sig9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace detail

// One complete surface design for a given channel: switch pattern, digital
// beamformers, power solution and the achieved metrics.
inline ArchitectureResult full_design(const Scenario &sc, const ChannelSet &channel,
                                      std::optional<double> fixed_rho_w = std::nullopt)
{
    detail::PointSetup pt{sc, fixed_rho_w};
    ExcitingWaveCircuit circuit =
        build_exciting_wave_circuit(channel.elements(), sc.rf_chains, sc.dft_use_2pi);
    return evaluate_architecture(ArchitectureKind::RhsSwitch, channel, circuit, sc.hardware(),
                                 sc.prices(), sc.bandwidth_hz, detail::design_options(pt));
}

// Runs the configured sweep: per point and trial a fresh channel from the
// (seed, point, trial) substream, all configured architectures on that same
// channel, one record per (point, architecture, trial) plus a mean record
// per (point, architecture). Iteration sweeps reuse the same channel
// substream across axis values so per-round trajectories are comparable.
// Threads only split the work; the records are identical for any count.
inline std::vector<SweepRecord> run_sweep(const Scenario &scenario, int threads = 1)
{
    scenario.validate();
    if (threads < 1)
        threads = 1;

    const std::string hash = scenario_hash(scenario);
    const std::string axis_name = to_string(scenario.sweep_axis);
    const int n_points = static_cast<int>(scenario.sweep_values.size());
    const int n_arch = static_cast<int>(scenario.architectures.size());
    const int n_trials = scenario.trials;

    // slot per (point, arch, trial), filled independently
    std::vector<SweepRecord> slots(static_cast<std::size_t>(n_points) * n_arch * n_trials);
    auto slot_of = [&](int pi, int ai, int ti) -> SweepRecord & {
        return slots[(static_cast<std::size_t>(pi) * n_arch + ai) * n_trials + ti];
    };

    auto run_one = [&](int pi, int ti) {
        const double value = scenario.sweep_values[pi];
        detail::PointSetup pt = detail::apply_axis(scenario, value);
        const std::uint64_t point_key =
            scenario.sweep_axis == SweepAxis::Iterations ? 0 : static_cast<std::uint64_t>(pi);

        Rng rng(substream_seed(scenario.seed, point_key, static_cast<std::uint64_t>(ti)));
        ChannelSet channel = generate_channel(pt.sc.users, pt.sc.geometry(), pt.sc.cluster_spec(),
                                              pt.sc.mean_large_scale_db, rng);
        ExcitingWaveCircuit circuit =
            build_exciting_wave_circuit(pt.sc.elements(), pt.sc.rf_chains, pt.sc.dft_use_2pi);
        DesignOptions opts = detail::design_options(pt);

        for (int ai = 0; ai < n_arch; ai++)
        {
            ArchitectureResult res =
                evaluate_architecture(scenario.architectures[ai], channel, circuit, pt.sc.hardware(),
                                      pt.sc.prices(), pt.sc.bandwidth_hz, opts);
            SweepRecord &rec = slot_of(pi, ai, ti);
            rec.axis = axis_name;
            rec.axis_value = value;
            rec.architecture = to_string(scenario.architectures[ai]);
            rec.trial = ti;
            rec.is_mean = false;
            rec.se_bit_per_hz = res.metrics.se_bit_per_hz;
            rec.ee_bit_per_j = res.metrics.ee_bit_per_j;
            rec.rho_w = res.power.rho_w;
            rec.shares = arma::conv_to<std::vector<double>>::from(res.power.share.p);
            rec.seed = scenario.seed;
            rec.config_hash = hash;
        }
    };

    const int n_tasks = n_points * n_trials;
    if (threads == 1)
    {
        for (int task = 0; task < n_tasks; task++)
            run_one(task / n_trials, task % n_trials);
    }
    else
    {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (int w = 0; w < threads; w++)
            pool.emplace_back([&, w] {
                try
                {
                    for (int task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1))
                        run_one(task / n_trials, task % n_trials);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    // canonical order: (point, architecture, trial), mean row after each block
    std::vector<SweepRecord> records;
    records.reserve(slots.size() + static_cast<std::size_t>(n_points) * n_arch);
    for (int pi = 0; pi < n_points; pi++)
        for (int ai = 0; ai < n_arch; ai++)
        {
            SweepRecord mean = slot_of(pi, ai, 0);
            mean.trial = -1;
            mean.is_mean = true;
            mean.se_bit_per_hz = 0.0;
            mean.ee_bit_per_j = 0.0;
            mean.rho_w = 0.0;
            std::fill(mean.shares.begin(), mean.shares.end(), 0.0);

            for (int ti = 0; ti < n_trials; ti++)
            {
                const SweepRecord &rec = slot_of(pi, ai, ti);
                records.push_back(rec);
                mean.se_bit_per_hz += rec.se_bit_per_hz / n_trials;
                mean.ee_bit_per_j += rec.ee_bit_per_j / n_trials;
                mean.rho_w += rec.rho_w / n_trials;
                for (std::size_t s = 0; s < mean.shares.size(); s++)
                    mean.shares[s] += rec.shares[s] / n_trials;
            }
            records.push_back(mean);
        }
    return records;
}

// Fixed column layout:
//   axis,axis_value,architecture,trial,is_mean,se_bit_per_hz,ee_bit_per_j,
//   rho_w,shares,seed,config_hash
// Floats carry 9 significant digits; shares are ';'-joined; the file is
// UTF-8, comma-separated and newline-terminated.
inline void emit_csv(const std::vector<SweepRecord> &records, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");

    out << "axis,axis_value,architecture,trial,is_mean,se_bit_per_hz,ee_bit_per_j,"
           "rho_w,shares,seed,config_hash\n";
    for (const auto &rec : records)
    {
        std::string shares;
        for (std::size_t i = 0; i < rec.shares.size(); i++)
        {
            if (i)
                shares += ';';
            shares += detail::format_sig9(rec.shares[i]);
        }
        out << rec.axis << ',' << detail::format_sig9(rec.axis_value) << ',' << rec.architecture
            << ',' << rec.trial << ',' << (rec.is_mean ? 1 : 0) << ','
            << detail::format_sig9(rec.se_bit_per_hz) << ',' << detail::format_sig9(rec.ee_bit_per_j)
            << ',' << detail::format_sig9(rec.rho_w) << ',' << shares << ',' << rec.seed << ','
            << rec.config_hash << '\n';
    }
    if (!out)
        throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

// Companion plot script (matplotlib) over the emitted CSV's mean rows.
inline void emit_plot_script(const Scenario &scenario, const std::string &csv_name,
                             const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_plot_script: cannot open '" + path + "' for writing");

    const std::string axis = to_string(scenario.sweep_axis);
    out << "#!/usr/bin/env python3\n"
        << "# Plots the mean curves of " << csv_name << " (generated file).\n"
        << "import csv\n"
        << "from collections import defaultdict\n"
        << "import matplotlib\n"
        << "matplotlib.use('Agg')\n"
        << "import matplotlib.pyplot as plt\n\n"
        << "curves_se = defaultdict(list)\n"
        << "curves_ee = defaultdict(list)\n"
        << "with open('" << csv_name << "') as f:\n"
        << "    for row in csv.DictReader(f):\n"
        << "        if row['is_mean'] != '1':\n"
        << "            continue\n"
        << "        x = float(row['axis_value'])\n"
        << "        curves_se[row['architecture']].append((x, float(row['se_bit_per_hz'])))\n"
        << "        curves_ee[row['architecture']].append((x, float(row['ee_bit_per_j'])))\n\n"
        << "fig, (ax_se, ax_ee) = plt.subplots(1, 2, figsize=(11, 4.5))\n"
        << "for arch in sorted(curves_se):\n"
        << "    pts = sorted(curves_se[arch])\n"
        << "    ax_se.plot([p[0] for p in pts], [p[1] for p in pts], marker='o', label=arch)\n"
        << "    pts = sorted(curves_ee[arch])\n"
        << "    ax_ee.plot([p[0] for p in pts], [p[1] / 1e6 for p in pts], marker='o', label=arch)\n"
        << "ax_se.set_xlabel('" << axis << "')\n"
        << "ax_se.set_ylabel('spectral efficiency [bit/s/Hz]')\n"
        << "ax_ee.set_xlabel('" << axis << "')\n"
        << "ax_ee.set_ylabel('energy efficiency [Mbit/J]')\n"
        << "ax_se.grid(True)\n"
        << "ax_ee.grid(True)\n"
        << "ax_ee.legend()\n"
        << "fig.tight_layout()\n"
        << "fig.savefig('plot_" << axis << ".png', dpi=150)\n"
        << "print('wrote plot_" << axis << ".png')\n";
}

// Run metadata next to the records; deterministic content (no timestamps).
inline void write_manifest(const Scenario &scenario, const std::string &csv_name,
                           const std::string &path)
{
    nlohmann::json j;
    j["tool"] = "rhsim";
    j["version"] = "0.1.0";
    j["config_hash"] = scenario_hash(scenario);
    j["seed"] = scenario.seed;
    j["records"] = csv_name;
    j["axis"] = to_string(scenario.sweep_axis);
    j["points"] = scenario.sweep_values.size();
    j["trials"] = scenario.trials;
    std::vector<std::string> tags;
    for (auto kind : scenario.architectures)
        tags.push_back(to_string(kind));
    j["architectures"] = tags;
    j["config"] = scenario_to_json(scenario);

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_manifest: cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

} // namespace rhsim

#endif
