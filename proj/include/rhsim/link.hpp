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

#ifndef rhsim_link_H
#define rhsim_link_H

#include <armadillo>
#include <cmath>
#include <stdexcept>

#include "rhsim/digital.hpp"
#include "rhsim/power.hpp"

namespace rhsim
{

// Achieved link quality: per-user SINR, spectral efficiency, energy
// efficiency and the power total behind it.
struct LinkMetrics
{
    arma::vec sinr;
    double se_bit_per_hz = 0.0;
    double ee_bit_per_j = 0.0;
    double total_power_w = 0.0;
};

// |u_k1^H G v_k2|^2 for all stream pairs of an explicit baseband channel.
inline arma::mat pairwise_gains(const BasebandChannel &bb, const SvdBeamformers &bf)
{
    const int s = bf.streams();
    arma::cx_mat c = bf.u.t() * bb.g * bf.v;
    arma::mat gains(s, s);
    for (int i = 0; i < s; i++)
        for (int j = 0; j < s; j++)
            gains(i, j) = std::norm(c(i, j));
    return gains;
}

// Same, composed from the surface pipeline G = sqrt(Ups) H Diag(xi) Phi.
inline arma::mat pairwise_gains(const ChannelSet &channels, const SwitchPattern &pattern,
                                const ExcitingWaveCircuit &circuit, const SvdBeamformers &bf)
{
    return pairwise_gains(baseband_channel(channels, pattern, circuit), bf);
}

// Analytic per-user SINR under residual transceiver distortion:
//   gamma_k = rho e_r e_t p_k G_kk /
//             (rho (1 - e_r e_t) p_k G_kk + rho sum_{k' != k} p_k' G_kk' + noise).
inline arma::vec sinr_analytic(const arma::mat &gains, const PowerShare &share, double rho_w,
                               const HardwareProfile &hw)
{
    if (rho_w < 0.0)
        throw std::invalid_argument("sinr_analytic: rho must be >= 0");
    if (gains.n_rows != gains.n_cols || gains.n_rows != share.p.n_elem)
        throw std::invalid_argument("sinr_analytic: dimension mismatch");

    const int k = static_cast<int>(gains.n_rows);
    const double eps = hw.epsilon();
    arma::vec out(k);
    for (int i = 0; i < k; i++)
    {
        double interference = 0.0;
        for (int j = 0; j < k; j++)
            if (j != i)
                interference += share.p(j) * gains(i, j);
        double self = rho_w * share.p(i) * gains(i, i);
        out(i) = self * eps / (self * (1.0 - eps) + rho_w * interference + hw.noise_power_w);
    }
    return out;
}

inline double spectral_efficiency(const arma::vec &sinr)
{
    double se = 0.0;
    for (arma::uword k = 0; k < sinr.n_elem; k++)
        se += std::log2(1.0 + sinr(k));
    return se;
}

inline double energy_efficiency(double se_bit_per_hz, double rho_w, const PowerModel &pm,
                                double bandwidth_hz)
{
    const double total = pm.total_power(rho_w);
    if (total <= 0.0)
        throw std::domain_error("energy_efficiency: total consumed power must be > 0");
    return bandwidth_hz * se_bit_per_hz / total;
}

// High-SNR spectral-efficiency ceiling K log2(1 + eps / (1 - eps)); only
// defined for impaired hardware.
inline double se_saturation(int users, const HardwareProfile &hw)
{
    const double eps = hw.epsilon();
    if (eps >= 1.0)
        throw std::domain_error("se_saturation: unbounded for ideal hardware");
    return users * std::log2(1.0 + eps / (1.0 - eps));
}

// Energy-efficiency ceiling of the switch-controlled surface: the SE ceiling
// over the rho-independent power floor. The model must describe that
// architecture (RF chains and switches only).
inline double ee_upper_bound(int users, const HardwareProfile &hw, const PowerModel &pm,
                             double bandwidth_hz)
{
    const double fixed = pm.fixed_power();
    if (fixed <= 0.0)
        throw std::domain_error("ee_upper_bound: zero overhead power, bound is unbounded");
    return bandwidth_hz * se_saturation(users, hw) / fixed;
}

inline LinkMetrics link_metrics(const arma::mat &gains, const PowerShare &share, double rho_w,
                                const HardwareProfile &hw, const PowerModel &pm, double bandwidth_hz)
{
    LinkMetrics m;
    m.sinr = sinr_analytic(gains, share, rho_w, hw);
    m.se_bit_per_hz = spectral_efficiency(m.sinr);
    m.total_power_w = pm.total_power(rho_w);
    m.ee_bit_per_j = energy_efficiency(m.se_bit_per_hz, rho_w, pm, bandwidth_hz);
    return m;
}

// Monte-Carlo validation of the analytic SINR. Every labeled received-signal
// term is drawn per trial: information symbols of the other users, the
// per-RF-chain distortion vectors at the BS, the scalar distortion at each
// UE, and the additive noise. The desired-signal power is deterministic
// (unit symbol energy); everything else accumulates into the denominator.
// Large-scale gains enter through the row scaling sqrt(Ups) H, matching the
// gain definition of the analytic formula.
//
// Trials are independently substreamed by index, so the estimate does not
// depend on evaluation order or on how trials are split across workers.
inline arma::vec monte_carlo_sinr(const ChannelSet &channels, const SwitchPattern &pattern,
                                  const ExcitingWaveCircuit &circuit, const SvdBeamformers &bf,
                                  const PowerShare &share, double rho_w, const HardwareProfile &hw,
                                  int trials, Rng &rng)
{
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_sinr: trials must be >= 1");

    const int s = bf.streams();
    const int m = static_cast<int>(bf.v.n_rows);
    const double eps_t = hw.epsilon_t;
    const double eps_r = hw.epsilon_r;

    // receive rows b_k^H = u_k^H sqrt(Ups) H F Phi, one per stream
    BasebandChannel bb = baseband_channel(channels, pattern, circuit);
    arma::cx_mat rows = bf.u.t() * bb.g; // s x m

    arma::cx_mat coupling = rows * bf.v; // coupling(k, k') = b_k^H v_k'
    // elementwise rows for the Hadamard distortion: dist[k'](k, :) = b_k^H .* v_k'^T
    std::vector<arma::cx_mat> dist(s);
    for (int j = 0; j < s; j++)
    {
        dist[j].set_size(s, m);
        for (int i = 0; i < s; i++)
            dist[j].row(i) = rows.row(i) % bf.v.col(j).st();
    }

    arma::vec desired(s);
    for (int i = 0; i < s; i++)
        desired(i) = rho_w * eps_r * eps_t * share.p(i) * std::norm(coupling(i, i));

    const std::uint64_t base = rng.next_u64();
    arma::vec denom(s, arma::fill::zeros);
    arma::cx_vec symbols(s), ue_dist(s), noise(s);
    arma::cx_mat bs_dist(m, s);

    for (int t = 0; t < trials; t++)
    {
        Rng sub(substream_seed(base, 0, static_cast<std::uint64_t>(t)));
        for (int j = 0; j < s; j++)
            symbols(j) = sub.cnormal();
        for (int j = 0; j < s; j++)
            for (int i = 0; i < m; i++)
                bs_dist(i, j) = sub.cnormal();
        for (int j = 0; j < s; j++)
            ue_dist(j) = sub.cnormal();
        for (int j = 0; j < s; j++)
            noise(j) = std::sqrt(hw.noise_power_w) * sub.cnormal();

        for (int i = 0; i < s; i++)
        {
            std::complex<double> acc = 0.0;
            for (int j = 0; j < s; j++)
            {
                const double pj = share.p(j);
                if (j != i)
                    acc += std::sqrt(rho_w * eps_r * eps_t * pj) * coupling(i, j) * symbols(j);
                acc += std::sqrt(rho_w * eps_r * (1.0 - eps_t) * pj) *
                       arma::as_scalar(dist[j].row(i) * bs_dist.col(j));
                acc += std::sqrt(rho_w * (1.0 - eps_r) * pj) * coupling(i, j) * ue_dist(j);
            }
            acc += noise(i);
            denom(i) += std::norm(acc);
        }
    }

    return desired / (denom / trials);
}

} // namespace rhsim

#endif
