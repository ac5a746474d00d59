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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rhsim/rhsim.hpp"

namespace fs = std::filesystem;

namespace
{

rhsim::Scenario load_or_default(const std::string &config_path, bool paper_scale,
                                std::optional<std::uint64_t> seed_override)
{
    rhsim::Scenario sc;
    if (!config_path.empty())
        sc = rhsim::load_scenario(config_path);
    if (paper_scale)
        sc.paper_scale();
    if (seed_override)
        sc.seed = *seed_override;
    sc.validate();
    return sc;
}

int run_sweep_cmd(const rhsim::Scenario &sc, const std::string &out_dir, int threads)
{
    fs::create_directories(out_dir);
    auto records = rhsim::run_sweep(sc, threads);

    const std::string csv_path = (fs::path(out_dir) / "records.csv").string();
    rhsim::emit_csv(records, csv_path);
    rhsim::emit_plot_script(sc, "records.csv",
                            (fs::path(out_dir) / ("plot_" + to_string(sc.sweep_axis) + ".script")).string());
    rhsim::write_manifest(sc, "records.csv", (fs::path(out_dir) / "manifest.json").string());

    int mean_rows = 0;
    for (const auto &rec : records)
        if (rec.is_mean)
        {
            mean_rows++;
            std::printf("%s=%-10.4g %-18s mean SE = %8.4f bit/s/Hz   mean EE = %9.4f Mbit/J\n",
                        rec.axis.c_str(), rec.axis_value, rec.architecture.c_str(),
                        rec.se_bit_per_hz, rec.ee_bit_per_j / 1e6);
        }
    std::printf("wrote %zu records (%d mean rows) to %s\n", records.size(), mean_rows, csv_path.c_str());
    return 0;
}

int run_ceilings_cmd(const rhsim::Scenario &sc)
{
    const rhsim::HardwareProfile hw = sc.hardware();
    const rhsim::PowerModel pm =
        rhsim::power_model_for(rhsim::ArchitectureKind::RhsSwitch, sc.elements(), sc.rf_chains, sc.prices());

    std::printf("K=%d M=%d N=%d B=%.6g Hz epsilon_t=%.6g epsilon_r=%.6g\n", sc.users, sc.rf_chains,
                sc.elements(), sc.bandwidth_hz, sc.epsilon_t, sc.epsilon_r);
    std::printf("fixed_power = %.9g W\n", pm.fixed_power());

    if (hw.epsilon() >= 1.0)
    {
        std::printf("se_saturation  = unbounded (ideal hardware)\n");
        std::printf("ee_upper_bound = unbounded (ideal hardware)\n");
        return 0;
    }
    const double se = rhsim::se_saturation(sc.users, hw);
    const double ee = rhsim::ee_upper_bound(sc.users, hw, pm, sc.bandwidth_hz);
    std::printf("se_saturation  = %.9g bit/s/Hz\n", se);
    std::printf("ee_upper_bound = %.9g Mbit/J\n", ee / 1e6);
    return 0;
}

// Quick self-checks of the solver stack against its independent oracles.
int run_validate_cmd(const rhsim::Scenario &sc)
{
    using namespace rhsim;
    int failures = 0;
    auto report = [&](const char *name, bool ok, const std::string &detail) {
        std::printf("[%s] %-34s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
        if (!ok)
            failures++;
    };

    const HardwareProfile hw = sc.hardware();

    { // switch-pattern solver vs exhaustive oracle
        const int n = 8, trials = 40;
        std::vector<double> ratios;
        bool never_below_all_on = true;
        for (int t = 0; t < trials; t++)
        {
            Rng rng(substream_seed(sc.seed, 101, t));
            ArrayGeometry geom{4, 2, 0.5, 0.5};
            ChannelSet ch = generate_channel(2, geom, sc.cluster_spec(), sc.mean_large_scale_db, rng);
            ExcitingWaveCircuit circuit = build_exciting_wave_circuit(n, 2, sc.dft_use_2pi);
            GainMatrix gain = build_gain_matrix(ch, circuit);
            SwitchPattern ed = solve_switch_pattern_ed(gain);
            SwitchPattern bf = brute_force_switch_pattern(gain);
            ratios.push_back(ed.objective_value / bf.objective_value);
            arma::uvec all_on(n, arma::fill::ones);
            if (ed.objective_value < switch_objective(gain, all_on) - 1e-12)
                never_below_all_on = false;
        }
        std::sort(ratios.begin(), ratios.end());
        double median = ratios[ratios.size() / 2];
        char buf[96];
        std::snprintf(buf, sizeof(buf), "median ED/oracle = %.4f over %d instances", median, trials);
        report("eigen-decomposition vs oracle", median >= 0.9 && never_below_all_on, buf);
    }

    { // impaired power sharing reduces to water-filling at epsilon = 1
        Rng rng(substream_seed(sc.seed, 102, 0));
        double max_dev = 0.0;
        for (int t = 0; t < 50; t++)
        {
            arma::vec lambda(4);
            for (auto &v : lambda)
                v = rng.uniform(1e-6, 1e-3);
            HardwareProfile ideal{1.0, 1.0, hw.noise_power_w};
            PowerShare a = power_share_hwi(lambda, 0.5, ideal);
            PowerShare b = water_filling(lambda, 0.5, hw.noise_power_w);
            max_dev = std::max(max_dev, arma::abs(a.p - b.p).max());
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max |dev| = %.3g", max_dev);
        report("ideal-hardware water-filling", max_dev <= 1e-9, buf);
    }

    { // analytic EE gradient vs central finite differences
        Rng rng(substream_seed(sc.seed, 103, 0));
        PowerModel pm = power_model_for(ArchitectureKind::RhsSwitch, sc.elements(), sc.rf_chains, sc.prices());
        double worst = 0.0;
        for (int t = 0; t < 50; t++)
        {
            arma::vec lambda(4);
            for (auto &v : lambda)
                v = rng.uniform(1e-6, 1e-3);
            HardwareProfile h{rng.uniform(0.5, 1.0), rng.uniform(0.5, 1.0), hw.noise_power_w};
            PowerShare share;
            share.p = arma::vec(4, arma::fill::value(0.25));
            double rho = rng.uniform(0.01, 1.0);
            double g = ee_gradient(rho, share, lambda, h, pm, sc.bandwidth_hz);
            double hstep = 1e-6 * rho;
            double fd = (share_energy_efficiency(rho + hstep, share, lambda, h, pm, sc.bandwidth_hz) -
                         share_energy_efficiency(rho - hstep, share, lambda, h, pm, sc.bandwidth_hz)) /
                        (2.0 * hstep);
            worst = std::max(worst, std::abs(g - fd) / std::abs(g));
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "worst rel dev = %.3g", worst);
        report("energy-efficiency gradient", worst <= 1e-6, buf);
    }

    { // Monte-Carlo SINR vs analytic formula
        Rng rng(substream_seed(sc.seed, 104, 0));
        ArrayGeometry geom{4, 4, 0.5, 0.5};
        ChannelSet ch = generate_channel(4, geom, sc.cluster_spec(), sc.mean_large_scale_db, rng);
        ExcitingWaveCircuit circuit = build_exciting_wave_circuit(16, 4, sc.dft_use_2pi);
        GainMatrix gain = build_gain_matrix(ch, circuit);
        SwitchPattern pattern = solve_switch_pattern_ed(gain);
        BasebandChannel bb = baseband_channel(ch, pattern, circuit);
        SvdBeamformers bf = svd_beamformers(bb, 4);
        PowerShare share;
        share.p = arma::vec(4, arma::fill::value(0.25));
        HardwareProfile h{0.8, 0.8, hw.noise_power_w};
        double rho = 0.01;
        arma::vec analytic = sinr_analytic(pairwise_gains(bb, bf), share, rho, h);
        arma::vec mc = monte_carlo_sinr(ch, pattern, circuit, bf, share, rho, h, 20000, rng);
        double worst = arma::abs(mc / analytic - 1.0).max();
        char buf[64];
        std::snprintf(buf, sizeof(buf), "worst rel dev = %.3g at 2e4 trials", worst);
        report("Monte-Carlo vs analytic SINR", worst <= 0.05, buf);
    }

    std::printf(failures == 0 ? "validate: all checks passed\n"
                              : "validate: %d check(s) FAILED\n",
                failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"switch-controlled RHS hybrid beamformer designer and energy-efficiency simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    bool paper_scale = false;
    std::optional<std::uint64_t> seed_override;
    int threads = 1;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "scenario config file (JSON)");
        cmd->add_flag("--paper-scale", paper_scale, "use the full-scale 16x16 surface settings");
        cmd->add_option("--seed", seed_override, "override the scenario seed");
    };

    CLI::App *sweep = app.add_subcommand("sweep", "run the configured sweep and write records");
    add_common(sweep);
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--threads", threads, "worker threads (records are identical for any count)");

    CLI::App *ceilings = app.add_subcommand("ceilings", "print the saturation SE and EE upper bound");
    add_common(ceilings);

    CLI::App *validate = app.add_subcommand("validate", "run the built-in oracle checks");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try
    {
        rhsim::Scenario sc = load_or_default(config_path, paper_scale, seed_override);
        if (sweep->parsed())
            return run_sweep_cmd(sc, out_dir, threads);
        if (ceilings->parsed())
            return run_ceilings_cmd(sc);
        return run_validate_cmd(sc);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
