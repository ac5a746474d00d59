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

#ifndef rhsim_architectures_H
#define rhsim_architectures_H

#include <armadillo>
#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhsim/channel.hpp"
#include "rhsim/digital.hpp"
#include "rhsim/holographic.hpp"
#include "rhsim/link.hpp"
#include "rhsim/power.hpp"

namespace rhsim
{

enum class ArchitectureKind
{
    FullyDigital,
    FullyConnectedPsa,
    SubConnectedPsa,
    PsaWithSwitches,
    RhsSwitch,
};

inline std::string to_string(ArchitectureKind kind)
{
    switch (kind)
    {
    case ArchitectureKind::FullyDigital: return "FullyDigital";
    case ArchitectureKind::FullyConnectedPsa: return "FullyConnectedPSA";
    case ArchitectureKind::SubConnectedPsa: return "SubConnectedPSA";
    case ArchitectureKind::PsaWithSwitches: return "PsaWithSwitches";
    case ArchitectureKind::RhsSwitch: return "RhsSwitch";
    }
    throw std::logic_error("to_string: unknown architecture kind");
}

inline ArchitectureKind architecture_from_string(const std::string &tag)
{
    if (tag == "FullyDigital") return ArchitectureKind::FullyDigital;
    if (tag == "FullyConnectedPSA") return ArchitectureKind::FullyConnectedPsa;
    if (tag == "SubConnectedPSA") return ArchitectureKind::SubConnectedPsa;
    if (tag == "PsaWithSwitches") return ArchitectureKind::PsaWithSwitches;
    if (tag == "RhsSwitch") return ArchitectureKind::RhsSwitch;
    throw std::invalid_argument("unknown architecture tag: " + tag);
}

// Analog network of the PSA baselines, N x M, plus the component counts the
// power accounting needs.
struct AnalogStage
{
    arma::cx_mat f_analog;
    int active_phase_shifters = 0;
    int active_switches = 0;
};

inline int deactivated_count(int n, double kappa)
{
    return static_cast<int>(std::ceil(kappa * n - 1e-12));
}

// Builds the phase-shifter network from the right-singular matrix of the
// full channel. Fully connected keeps every (n, m); sub-connected gives
// chain m the N/M rows m*(N/M) .. (m+1)*(N/M)-1; the switched variant
// additionally zeroes the ceil(kappa N) connected entries of smallest
// magnitude (ties resolved toward the lower flat index).
inline AnalogStage analog_stage(ArchitectureKind kind, const arma::cx_mat &right_singular,
                                double kappa = 0.0)
{
    const int n = static_cast<int>(right_singular.n_rows);
    const int m = static_cast<int>(right_singular.n_cols);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));

    if (kind == ArchitectureKind::FullyDigital || kind == ArchitectureKind::RhsSwitch)
        throw std::invalid_argument("analog_stage: architecture has no phase-shift network");
    if (kind != ArchitectureKind::FullyConnectedPsa && n % m != 0)
        throw std::invalid_argument("analog_stage: sub-connected networks need M to divide N");
    if (kappa < 0.0 || kappa > 1.0)
        throw std::invalid_argument("analog_stage: kappa must lie in [0, 1]");

    AnalogStage stage;
    stage.f_analog.zeros(n, m);

    if (kind == ArchitectureKind::FullyConnectedPsa)
    {
        for (int j = 0; j < m; j++)
            for (int i = 0; i < n; i++)
                stage.f_analog(i, j) = std::polar(amp, std::arg(right_singular(i, j)));
        stage.active_phase_shifters = n * m;
        return stage;
    }

    const int rows_per_chain = n / m;
    for (int j = 0; j < m; j++)
        for (int i = j * rows_per_chain; i < (j + 1) * rows_per_chain; i++)
            stage.f_analog(i, j) = std::polar(amp, std::arg(right_singular(i, j)));
    stage.active_phase_shifters = n;

    if (kind == ArchitectureKind::PsaWithSwitches)
    {
        // connected entries ordered by |V|, then by flat index
        std::vector<std::pair<double, int>> mags;
        mags.reserve(n);
        for (int j = 0; j < m; j++)
            for (int i = j * rows_per_chain; i < (j + 1) * rows_per_chain; i++)
                mags.emplace_back(std::abs(right_singular(i, j)), i + j * n);
        std::sort(mags.begin(), mags.end());

        const int off = deactivated_count(n, kappa);
        for (int d = 0; d < off; d++)
        {
            int flat = mags[d].second;
            stage.f_analog(flat % n, flat / n) = 0.0;
        }
        stage.active_phase_shifters = n - off;
        stage.active_switches = n;
    }
    return stage;
}

// Component counts of each architecture over the shared price list.
inline PowerModel power_model_for(ArchitectureKind kind, int n, int m, const PowerModel &prices,
                                  double kappa = 0.0)
{
    PowerModel pm = prices;
    pm.n_rf = 0;
    pm.n_ps = 0;
    pm.n_sw = 0;
    switch (kind)
    {
    case ArchitectureKind::FullyDigital:
        pm.n_rf = n;
        break;
    case ArchitectureKind::FullyConnectedPsa:
        pm.n_rf = m;
        pm.n_ps = n * m;
        break;
    case ArchitectureKind::SubConnectedPsa:
        pm.n_rf = m;
        pm.n_ps = n;
        break;
    case ArchitectureKind::PsaWithSwitches:
        pm.n_rf = m;
        pm.n_ps = n - deactivated_count(n, kappa);
        pm.n_sw = n;
        break;
    case ArchitectureKind::RhsSwitch:
        pm.n_rf = m;
        pm.n_sw = n;
        break;
    }
    return pm;
}

inline double architecture_power(ArchitectureKind kind, double rho_w, int n, int m,
                                 const PowerModel &prices, double kappa = 0.0)
{
    if (rho_w < 0.0)
        throw std::invalid_argument("architecture_power: rho must be >= 0");
    return power_model_for(kind, n, m, prices, kappa).total_power(rho_w);
}

// Design knobs shared by every architecture evaluation.
struct DesignOptions
{
    double p_max_w = 1.0;
    int rounds = 4;
    GradientOptions gradient;
    double kappa = 0.5;
    bool hwi_aware = true;          // Algorithm-1 sharing vs ideal-model water-filling
    std::optional<double> fixed_rho_w; // set for SNR sweeps: skip the power optimization
    bool dft_2pi = true;
    bool spgm_upsilon_weighted = false;
};

// Everything one architecture evaluation produces.
struct ArchitectureResult
{
    ArchitectureKind kind = ArchitectureKind::RhsSwitch;
    SwitchPattern pattern;    // RhsSwitch only
    AnalogStage stage;        // PSA kinds only
    BasebandChannel baseband;
    SvdBeamformers beamformers;
    PowerSolution power;
    PowerModel power_model;
    LinkMetrics metrics;
};

// Uniform evaluation pipeline: the kind's analog/holographic stage, the
// shared SVD digital beamformer, the shared power optimization, then the
// metrics under the kind's power accounting.
inline ArchitectureResult evaluate_architecture(ArchitectureKind kind, const ChannelSet &channels,
                                                const ExcitingWaveCircuit &circuit,
                                                const HardwareProfile &hw, const PowerModel &prices,
                                                double bandwidth_hz, const DesignOptions &opts)
{
    const int n = channels.elements();
    const int k = channels.users();

    ArchitectureResult res;
    res.kind = kind;

    arma::cx_mat full = arma::diagmat(arma::conv_to<arma::cx_vec>::from(arma::sqrt(channels.upsilon))) *
                        channel_matrix(channels); // sqrt(Ups) H, K x N

    int chains = 0;
    switch (kind)
    {
    case ArchitectureKind::RhsSwitch:
    {
        GainMatrix gain = build_gain_matrix(channels, circuit, opts.spgm_upsilon_weighted);
        res.pattern = solve_switch_pattern_ed(gain);
        res.baseband = baseband_channel(channels, res.pattern, circuit);
        chains = circuit.feeds();
        break;
    }
    case ArchitectureKind::FullyDigital:
    {
        res.baseband.g = full;
        chains = n;
        break;
    }
    default:
    {
        const int m = circuit.feeds();
        arma::cx_mat u_full, v_full;
        arma::vec s;
        if (!arma::svd(u_full, s, v_full, full))
            throw std::runtime_error("evaluate_architecture: SVD of the full channel failed");
        res.stage = analog_stage(kind, v_full.cols(0, m - 1), opts.kappa);
        res.baseband.g = full * res.stage.f_analog;
        chains = m;
        break;
    }
    }

    res.power_model = power_model_for(kind, n, chains, prices, opts.kappa);
    res.beamformers = svd_beamformers(res.baseband, std::min(k, res.baseband.feeds()));
    const arma::vec &lambda = res.beamformers.lambda;

    HardwareProfile design_hw = hw;
    if (!opts.hwi_aware)
    {
        design_hw.epsilon_t = 1.0;
        design_hw.epsilon_r = 1.0;
    }

    if (opts.fixed_rho_w)
    {
        res.power.rho_w = *opts.fixed_rho_w;
        res.power.share = power_share_hwi(lambda, res.power.rho_w, design_hw);
        res.power.iterations = 0;
        res.power.se_bit_per_hz = share_spectral_efficiency(lambda, res.power.share.p, res.power.rho_w, hw);
        res.power.ee_bit_per_j = bandwidth_hz * res.power.se_bit_per_hz / res.power_model.total_power(res.power.rho_w);
    }
    else
    {
        res.power = alternate_power_opt(lambda, hw, res.power_model, bandwidth_hz, opts.p_max_w,
                                        opts.rounds, opts.gradient, opts.hwi_aware);
    }

    arma::mat gains = pairwise_gains(res.baseband, res.beamformers);
    res.metrics = link_metrics(gains, res.power.share, res.power.rho_w, hw, res.power_model, bandwidth_hz);
    return res;
}

} // namespace rhsim

#endif
