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

#ifndef rhsim_power_H
#define rhsim_power_H

#include <armadillo>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rhsim
{

// Transceiver quality factors and receiver noise power. epsilon() is the
// combined factor; 1 means ideal hardware.
struct HardwareProfile
{
    double epsilon_t = 1.0;
    double epsilon_r = 1.0;
    double noise_power_w = 1e-12;

    double epsilon() const { return epsilon_t * epsilon_r; }

    bool ideal() const { return 1.0 - epsilon() < 1e-12; }

    void validate() const
    {
        if (epsilon_t < 0.0 || epsilon_t > 1.0 || epsilon_r < 0.0 || epsilon_r > 1.0)
            throw std::invalid_argument("HardwareProfile: quality factors must lie in [0, 1]");
        if (noise_power_w <= 0.0)
            throw std::invalid_argument("HardwareProfile: noise power must be > 0");
    }
};

// Component power accounting: P(rho) = rho / zeta + P_syn + counts * prices.
struct PowerModel
{
    double amplifier_efficiency = 0.39;
    double p_syn_w = 2.0;
    double p_rf_w = 1.0;
    double p_ps_w = 0.03;
    double p_sw_w = 0.001;
    int n_rf = 0;
    int n_ps = 0;
    int n_sw = 0;

    double fixed_power() const
    {
        return p_syn_w + n_rf * p_rf_w + n_ps * p_ps_w + n_sw * p_sw_w;
    }

    double total_power(double rho_w) const
    {
        return rho_w / amplifier_efficiency + fixed_power();
    }

    void validate() const
    {
        if (amplifier_efficiency <= 0.0)
            throw std::invalid_argument("PowerModel: amplifier efficiency must be > 0");
        if (p_syn_w < 0.0 || p_rf_w < 0.0 || p_ps_w < 0.0 || p_sw_w < 0.0)
            throw std::invalid_argument("PowerModel: component powers must be >= 0");
        if (n_rf < 0 || n_ps < 0 || n_sw < 0)
            throw std::invalid_argument("PowerModel: component counts must be >= 0");
    }
};

// Per-user fraction of the transmit power plus the Lagrange multiplier the
// active streams satisfy at the solution.
struct PowerShare
{
    arma::vec p;
    double lagrange_b = 0.0;
};

class PowerOptError : public std::runtime_error
{
  public:
    PowerOptError(const std::string &what, double last_rho_w, int iterations)
        : std::runtime_error(what), last_rho_w(last_rho_w), iterations(iterations)
    {
    }

    double last_rho_w;
    int iterations;
};

// Per-stream SINR of the diagonalized link:
//   gamma = rho lambda^2 eps p / (rho lambda^2 (1 - eps) p + noise).
inline double stream_sinr(double lambda, double p, double rho_w, const HardwareProfile &hw)
{
    const double sig = rho_w * lambda * lambda * p;
    return sig * hw.epsilon() / (sig * (1.0 - hw.epsilon()) + hw.noise_power_w);
}

// Sum rate over the diagonalized streams, bit/s/Hz.
inline double share_spectral_efficiency(const arma::vec &lambda, const arma::vec &p, double rho_w,
                                        const HardwareProfile &hw)
{
    double se = 0.0;
    for (arma::uword k = 0; k < lambda.n_elem; k++)
        se += std::log2(1.0 + stream_sinr(lambda(k), p(k), rho_w, hw));
    return se;
}

// Classical water-filling on parallel streams with gains lambda_k^2:
//   p_k = max(mu - noise / (rho lambda_k^2), 0),  sum p_k = 1.
// Zero-gain streams get zero power; all-zero gains are an error.
inline PowerShare water_filling(const arma::vec &lambda, double rho_w, double noise_w)
{
    const int k = static_cast<int>(lambda.n_elem);
    if (rho_w <= 0.0)
        throw std::invalid_argument("water_filling: rho must be > 0");

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lambda(a) > lambda(b); });

    int live = 0;
    while (live < k && lambda(order[live]) > 0.0)
        live++;
    if (live == 0)
        throw std::invalid_argument("water_filling: all stream gains are zero");

    // exact active-set solve: strongest m streams active, mu from the simplex
    arma::vec inv(live);
    for (int i = 0; i < live; i++)
        inv(i) = noise_w / (rho_w * lambda(order[i]) * lambda(order[i]));

    double mu = 0.0;
    int active = live;
    for (int m = live; m >= 1; m--)
    {
        double c = (1.0 + arma::accu(inv.head(m))) / m;
        if (c - inv(m - 1) > 0.0)
        {
            mu = c;
            active = m;
            break;
        }
    }

    PowerShare share;
    share.p.zeros(k);
    for (int i = 0; i < active; i++)
        share.p(order[i]) = mu - inv(i);
    // same KKT object as the impaired solver: d/dp of the rate equals -b
    share.lagrange_b = -1.0 / (std::log(2.0) * mu);
    return share;
}

namespace detail
{

// f_k(b) of the impaired power-sharing stationarity condition; b < 0.
inline double hwi_share_candidate(double b, double a, double eps)
{
    const double ln2 = std::log(2.0);
    double disc = eps * eps - 4.0 * a * (1.0 - eps) * eps / (ln2 * b);
    disc = std::max(disc, 0.0); // guard against roundoff during bracketing
    return (std::sqrt(disc) - (2.0 - eps)) / (2.0 * a * (1.0 - eps));
}

} // namespace detail

// Power sharing under hardware impairments. Streams are sorted by descending
// gain; the multiplier b < 0 solving sum f_k(b) = 1 over the active set is
// found by bisection, and trailing streams are deactivated while any share
// is negative. With ideal hardware this degenerates to water-filling, which
// is used directly for epsilon = 1.
inline PowerShare power_share_hwi(const arma::vec &lambda, double rho_w, const HardwareProfile &hw)
{
    hw.validate();
    if (rho_w <= 0.0)
        throw std::invalid_argument("power_share_hwi: rho must be > 0");
    if (hw.ideal())
        return water_filling(lambda, rho_w, hw.noise_power_w);

    const int k = static_cast<int>(lambda.n_elem);
    const double eps = hw.epsilon();

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lambda(a) > lambda(b); });

    int live = 0;
    while (live < k && lambda(order[live]) > 0.0)
        live++;
    if (live == 0)
        throw std::invalid_argument("power_share_hwi: all stream gains are zero");

    arma::vec a(live); // rho lambda^2 / noise of each live stream
    for (int i = 0; i < live; i++)
        a(i) = rho_w * lambda(order[i]) * lambda(order[i]) / hw.noise_power_w;

    PowerShare share;
    share.p.zeros(k);

    for (int active = live; active >= 1; active--)
    {
        auto sum_shares = [&](double b) {
            double s = 0.0;
            for (int i = 0; i < active; i++)
                s += detail::hwi_share_candidate(b, a(i), eps);
            return s;
        };

        // sum f_k(b) decreases as b walks away from 0^-: bracket the root
        double hi = -1e-18;
        double lo = -1.0;
        int guard = 0;
        while (sum_shares(lo) > 1.0 && ++guard < 200)
            lo *= 2.0;
        if (guard >= 200)
            continue; // no crossing with this active set; drop another stream

        for (int it = 0; it < 200; it++)
        {
            double mid = (lo + hi) / 2.0;
            if (sum_shares(mid) > 1.0)
                hi = mid;
            else
                lo = mid;
            if (std::abs(hi - lo) <= 1e-16 * std::abs(lo))
                break;
        }
        const double b = (lo + hi) / 2.0;

        bool feasible = true;
        for (int i = 0; i < active; i++)
            if (detail::hwi_share_candidate(b, a(i), eps) < 0.0)
            {
                feasible = false;
                break;
            }
        if (!feasible)
            continue; // Algorithm step: deactivate the weakest stream

        for (int i = 0; i < active; i++)
            share.p(order[i]) = detail::hwi_share_candidate(b, a(i), eps);
        share.lagrange_b = b;
        return share;
    }

    throw std::runtime_error("power_share_hwi: no feasible multiplier, all streams deactivated");
}

// Closed-form derivative of the energy efficiency with respect to the
// transmit power at fixed shares:
//   dE/drho = B / (ln2 P^2) * ( sum_k P lk^2 eps pk n /
//             ((rho lk^2 pk + n)(rho lk^2 (1-eps) pk + n))
//             - (1/zeta) sum_k ln(1 + gamma_k) ),  P = rho/zeta + P_fixed.
inline double ee_gradient(double rho_w, const PowerShare &share, const arma::vec &lambda,
                          const HardwareProfile &hw, const PowerModel &pm, double bandwidth_hz)
{
    if (rho_w <= 0.0)
        throw std::invalid_argument("ee_gradient: rho must be > 0");

    const double ln2 = std::log(2.0);
    const double eps = hw.epsilon();
    const double n = hw.noise_power_w;
    const double ptot = pm.total_power(rho_w);

    double rate_term = 0.0;
    double log_term = 0.0;
    for (arma::uword k = 0; k < lambda.n_elem; k++)
    {
        const double lp = lambda(k) * lambda(k) * share.p(k);
        rate_term += ptot * lp * eps * n / ((rho_w * lp + n) * (rho_w * lp * (1.0 - eps) + n));
        log_term += std::log(1.0 + stream_sinr(lambda(k), share.p(k), rho_w, hw));
    }
    return bandwidth_hz / (ln2 * ptot * ptot) *
           (rate_term - log_term / pm.amplifier_efficiency);
}

// Energy efficiency of the diagonalized link at (rho, shares), bit/J.
inline double share_energy_efficiency(double rho_w, const PowerShare &share, const arma::vec &lambda,
                                      const HardwareProfile &hw, const PowerModel &pm,
                                      double bandwidth_hz)
{
    return bandwidth_hz * share_spectral_efficiency(lambda, share.p, rho_w, hw) / pm.total_power(rho_w);
}

struct GradientOptions
{
    double step = 0.0;      // initial ascent step; <= 0 picks 1e-3 * p_max
    double tol_rel = 1e-6;  // stop when |dE/drho| < tol_rel * |initial gradient|
    int max_iter = 100000;
};

// Transmit-power optimization. Starts at the budget; a non-negative gradient
// there means the budget itself is optimal. Otherwise ascends
// rho <- rho + step * dE/drho until |dE/drho| falls under the tolerance.
// The step is halved whenever a move would lower the energy efficiency or
// the gradient flips sign, which keeps the fixed-step rule stable across
// the very different gradient magnitudes the EE objective produces.
inline double optimize_transmit_power(const PowerShare &share, const arma::vec &lambda,
                                      const HardwareProfile &hw, const PowerModel &pm,
                                      double bandwidth_hz, double p_max_w,
                                      const GradientOptions &opts = {})
{
    if (p_max_w <= 0.0)
        throw std::invalid_argument("optimize_transmit_power: p_max must be > 0");
    if (opts.tol_rel <= 0.0 || opts.max_iter < 1)
        throw std::invalid_argument("optimize_transmit_power: invalid tolerance or iteration cap");

    auto grad = [&](double rho) { return ee_gradient(rho, share, lambda, hw, pm, bandwidth_hz); };
    auto ee = [&](double rho) { return share_energy_efficiency(rho, share, lambda, hw, pm, bandwidth_hz); };

    double rho = p_max_w;
    double g = grad(rho);
    if (g >= 0.0)
        return p_max_w;

    const double eps_stop = opts.tol_rel * std::abs(g);
    const double rho_floor = 1e-12 * p_max_w;
    double step = opts.step > 0.0 ? opts.step : 1e-3 * p_max_w;
    double prev_sign = -1.0;

    for (int it = 1; it <= opts.max_iter; it++)
    {
        if (std::abs(g) < eps_stop)
            return rho;

        double sign = g > 0.0 ? 1.0 : -1.0;
        if (sign != prev_sign)
            step /= 2.0; // crossed the maximum; damp the bounce
        prev_sign = sign;

        double s = std::min(step, 0.25 * p_max_w / std::abs(g));
        double cand = std::clamp(rho + s * g, rho_floor, p_max_w);
        while (ee(cand) < ee(rho))
        {
            s /= 2.0;
            if (s < 1e-18 * p_max_w)
                return rho; // EE resolution exhausted: rho is the numerical optimum
            cand = std::clamp(rho + s * g, rho_floor, p_max_w);
        }
        if (cand == rho)
            return rho; // no representable move improves the objective

        rho = cand;
        g = grad(rho);
        step *= 1.2;
    }
    throw PowerOptError("optimize_transmit_power: iteration cap exceeded", rho, opts.max_iter);
}

// One full power design: transmit power, shares, the efficiencies achieved
// and the EE trajectory over the alternation rounds.
struct PowerSolution
{
    double rho_w = 0.0;
    PowerShare share;
    double se_bit_per_hz = 0.0;
    double ee_bit_per_j = 0.0;
    int iterations = 0;
    std::vector<double> ee_per_round;
};

// Alternating optimization of shares and transmit power. Shares start
// uniform and rho at the budget; each round re-solves the sharing at the
// current rho and then re-optimizes rho. With hwi_aware_design = false the
// design pretends the hardware is ideal (water-filling shares, ideal-model
// gradient), while the reported efficiencies always use the true profile.
inline PowerSolution alternate_power_opt(const arma::vec &lambda, const HardwareProfile &hw,
                                         const PowerModel &pm, double bandwidth_hz, double p_max_w,
                                         int rounds, const GradientOptions &opts = {},
                                         bool hwi_aware_design = true)
{
    if (rounds < 1)
        throw std::invalid_argument("alternate_power_opt: rounds must be >= 1");

    HardwareProfile design_hw = hw;
    if (!hwi_aware_design)
    {
        design_hw.epsilon_t = 1.0;
        design_hw.epsilon_r = 1.0;
    }

    PowerSolution sol;
    sol.rho_w = p_max_w;
    sol.share.p = arma::vec(lambda.n_elem, arma::fill::value(1.0 / lambda.n_elem));
    sol.ee_per_round.reserve(rounds);

    for (int t = 0; t < rounds; t++)
    {
        sol.share = power_share_hwi(lambda, sol.rho_w, design_hw);
        sol.rho_w = optimize_transmit_power(sol.share, lambda, design_hw, pm, bandwidth_hz, p_max_w, opts);
        sol.ee_per_round.push_back(share_energy_efficiency(sol.rho_w, sol.share, lambda, hw, pm, bandwidth_hz));
    }

    sol.iterations = rounds;
    sol.se_bit_per_hz = share_spectral_efficiency(lambda, sol.share.p, sol.rho_w, hw);
    sol.ee_bit_per_j = bandwidth_hz * sol.se_bit_per_hz / pm.total_power(sol.rho_w);
    return sol;
}

} // namespace rhsim

#endif
