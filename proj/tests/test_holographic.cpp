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

#include <catch2/catch_amalgamated.hpp>

#include "rhsim/holographic.hpp"

using namespace rhsim;

namespace
{

ChannelSet random_channels(int users, int n, std::uint64_t seed)
{
    Rng rng(seed);
    ChannelSet ch;
    for (int k = 0; k < users; k++)
    {
        arma::cx_vec h(n);
        for (auto &v : h)
            v = rng.cnormal();
        ch.h.push_back(h);
    }
    ch.upsilon = arma::vec(users, arma::fill::ones);
    return ch;
}

// direct evaluation of sum_k ||h_k^H Diag(xi) Phi||^2, the identity oracle
double masked_gain(const ChannelSet &ch, const ExcitingWaveCircuit &circuit, const arma::uvec &xi)
{
    arma::cx_vec mask = arma::conv_to<arma::cx_vec>::from(arma::conv_to<arma::vec>::from(xi));
    double acc = 0.0;
    for (const auto &h : ch.h)
    {
        arma::cx_rowvec g = (arma::conj(h) % mask).st() * circuit.phi;
        acc += std::norm(arma::norm(g));
    }
    return acc;
}

} // namespace

TEST_CASE("single-feed circuit is a constant column")
{
    ExcitingWaveCircuit c = build_exciting_wave_circuit(4, 1);
    REQUIRE(c.phi.n_rows == 4);
    REQUIRE(c.phi.n_cols == 1);
    for (auto v : c.phi)
        REQUIRE(std::abs(v - std::complex<double>(0.5, 0.0)) < 1e-15);
}

TEST_CASE("second column walks the quarter-turn roots of unity")
{
    ExcitingWaveCircuit c = build_exciting_wave_circuit(4, 2);
    arma::cx_vec want = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}};
    for (int i = 0; i < 4; i++)
        REQUIRE(std::abs(c.phi(i, 1) - want(i)) < 1e-14);
}

TEST_CASE("circuit columns are orthonormal")
{
    ExcitingWaveCircuit c = build_exciting_wave_circuit(16, 8);
    arma::cx_mat gram = c.phi.t() * c.phi;
    REQUIRE(arma::abs(gram - arma::eye<arma::cx_mat>(8, 8)).max() < 1e-12);
}

TEST_CASE("circuit entries all have modulus 1/sqrt(N)")
{
    ExcitingWaveCircuit c = build_exciting_wave_circuit(12, 5);
    for (auto v : c.phi)
        REQUIRE(std::abs(std::abs(v) - 1.0 / std::sqrt(12.0)) < 1e-12);
}

TEST_CASE("literal no-2pi convention is available behind the flag")
{
    ExcitingWaveCircuit c = build_exciting_wave_circuit(8, 4, false);
    // entry (n, m) = (3, 3) in 1-based indexing: exponent (3-1)(3-1)/8
    std::complex<double> want = std::polar(1.0 / std::sqrt(8.0), 4.0 / 8.0);
    REQUIRE(std::abs(c.phi(2, 2) - want) < 1e-14);
}

TEST_CASE("oversampled feed networks are rejected")
{
    REQUIRE_THROWS_AS(build_exciting_wave_circuit(4, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(build_exciting_wave_circuit(4, 0), std::invalid_argument);
}

TEST_CASE("legacy amplitude coefficient")
{
    REQUIRE(legacy_amplitude_coefficient(1.3, 1.3) == Catch::Approx(1.0));
    REQUIRE(legacy_amplitude_coefficient(0.0, M_PI) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(legacy_amplitude_coefficient(M_PI / 2.0, 0.0) == Catch::Approx(0.5));
}

TEST_CASE("single nonzero channel tap produces a single Q entry")
{
    ChannelSet ch;
    arma::cx_vec e1(4, arma::fill::zeros);
    e1(0) = 1.0;
    ch.h.push_back(e1);
    ch.upsilon = arma::vec(1, arma::fill::ones);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(4, 1);
    GainMatrix gain = build_gain_matrix(ch, c);
    REQUIRE(std::abs(gain.q(0, 0) - std::complex<double>(0.25, 0.0)) < 1e-14);
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++)
            if (i || j)
                REQUIRE(std::abs(gain.q(i, j)) < 1e-14);
}

TEST_CASE("quadratic form reproduces the masked gain for every binary pattern")
{
    ChannelSet ch = random_channels(2, 4, 21);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(4, 2);
    GainMatrix gain = build_gain_matrix(ch, c);

    for (unsigned mask = 0; mask < 16; mask++)
    {
        arma::uvec xi(4);
        for (int i = 0; i < 4; i++)
            xi(i) = (mask >> i) & 1u;
        REQUIRE(switch_objective(gain, xi) == Catch::Approx(masked_gain(ch, c, xi)).margin(1e-10));
    }
}

TEST_CASE("all-on pattern recovers the unmasked gain")
{
    ChannelSet ch = random_channels(3, 6, 22);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(6, 3);
    GainMatrix gain = build_gain_matrix(ch, c);
    arma::uvec ones(6, arma::fill::ones);
    REQUIRE(switch_objective(gain, ones) == Catch::Approx(masked_gain(ch, c, ones)).epsilon(1e-10));
}

TEST_CASE("Q is Hermitian positive semidefinite with the lifted block layout")
{
    ChannelSet ch = random_channels(3, 8, 23);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(8, 4);
    GainMatrix gain = build_gain_matrix(ch, c);

    REQUIRE(arma::abs(gain.q - gain.q.t()).max() < 1e-10);
    arma::vec ev = arma::eig_sym(gain.q);
    REQUIRE(ev.min() > -1e-10);

    const int n = 8;
    REQUIRE(arma::abs(gain.q_lifted.submat(0, 0, n - 1, n - 1) - gain.q).max() < 1e-14);
    arma::cx_vec onesc(n, arma::fill::ones);
    REQUIRE(arma::abs(gain.q_lifted.submat(0, n, n - 1, n) - gain.q * onesc).max() < 1e-12);
    REQUIRE(std::abs(gain.q_lifted(n, n)) == 0.0);
}

TEST_CASE("gain matrix rejects mismatched dimensions")
{
    ChannelSet ch = random_channels(2, 4, 24);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(8, 2);
    REQUIRE_THROWS_AS(build_gain_matrix(ch, c), std::invalid_argument);
}

TEST_CASE("diagonal gain matrix keeps every switch on")
{
    GainMatrix gain;
    gain.q = arma::cx_mat(arma::diagmat(arma::vec{0.4, 1.2, 0.1, 2.0}),
                          arma::zeros<arma::mat>(4, 4));
    arma::cx_vec onesc(4, arma::fill::ones);
    gain.q_lifted.zeros(5, 5);
    gain.q_lifted.submat(0, 0, 3, 3) = gain.q;
    gain.q_lifted.submat(0, 4, 3, 4) = gain.q * onesc;
    gain.q_lifted.submat(4, 0, 4, 3) = (gain.q * onesc).t();

    SwitchPattern p = solve_switch_pattern_ed(gain);
    REQUIRE(p.active() == 4);
    REQUIRE(p.objective_value == Catch::Approx(3.7));
}

TEST_CASE("all-zero channels fall back to the all-on pattern")
{
    ChannelSet ch;
    ch.h.push_back(arma::cx_vec(4, arma::fill::zeros));
    ch.upsilon = arma::vec(1, arma::fill::ones);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(4, 2);
    GainMatrix gain = build_gain_matrix(ch, c);
    SwitchPattern p = solve_switch_pattern_ed(gain);
    REQUIRE(p.active() == 4);
    REQUIRE(p.objective_value == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("eigen solver tracks the exhaustive oracle")
{
    const int n = 8, trials = 50;
    std::vector<double> ratios;
    for (int t = 0; t < trials; t++)
    {
        ChannelSet ch = random_channels(2, n, 1000 + t);
        ExcitingWaveCircuit c = build_exciting_wave_circuit(n, 2);
        GainMatrix gain = build_gain_matrix(ch, c);

        SwitchPattern ed = solve_switch_pattern_ed(gain);
        SwitchPattern oracle = brute_force_switch_pattern(gain);

        REQUIRE(oracle.objective_value >= ed.objective_value - 1e-12); // oracle dominance
        arma::uvec all_on(n, arma::fill::ones);
        REQUIRE(ed.objective_value >= switch_objective(gain, all_on) - 1e-12);
        ratios.push_back(ed.objective_value / oracle.objective_value);
    }
    std::sort(ratios.begin(), ratios.end());
    REQUIRE(ratios[trials / 2] >= 0.9);
}

TEST_CASE("brute force single switch")
{
    GainMatrix gain;
    gain.q = arma::cx_mat(1, 1);
    gain.q(0, 0) = 0.7;
    gain.q_lifted.zeros(2, 2);
    gain.q_lifted(0, 0) = 0.7;
    gain.q_lifted(0, 1) = 0.7;
    gain.q_lifted(1, 0) = 0.7;
    SwitchPattern p = brute_force_switch_pattern(gain);
    REQUIRE(p.xi(0) == 1);
    REQUIRE(p.objective_value == Catch::Approx(0.7));
}

TEST_CASE("brute force tie-break picks the lexicographically smallest pattern")
{
    GainMatrix gain;
    gain.q = arma::cx_mat(arma::mat{{1.0, -0.8}, {-0.8, 1.0}}, arma::zeros<arma::mat>(2, 2));
    gain.q_lifted.zeros(3, 3); // unused by the oracle
    SwitchPattern p = brute_force_switch_pattern(gain);
    REQUIRE(p.objective_value == Catch::Approx(1.0));
    REQUIRE(p.xi(0) == 0);
    REQUIRE(p.xi(1) == 1);
}

TEST_CASE("brute force rejects large instances")
{
    GainMatrix gain;
    gain.q.zeros(21, 21);
    REQUIRE_THROWS_AS(brute_force_switch_pattern(gain), std::invalid_argument);
}

TEST_CASE("binary optimum matches the continuous box optimum")
{
    // for PSD Q the box-constrained maximum sits at a vertex, so a grid
    // search over [0,1]^N can never beat the exhaustive vertex search
    const int n = 6;
    ChannelSet ch = random_channels(2, n, 31);
    ExcitingWaveCircuit c = build_exciting_wave_circuit(n, 2);
    GainMatrix gain = build_gain_matrix(ch, c);
    arma::mat s = gain.q_real();

    SwitchPattern vertex = brute_force_switch_pattern(gain);

    const int grid = 5; // grid values 0, 0.25, 0.5, 0.75, 1
    double best = 0.0;
    std::vector<int> idx(n, 0);
    arma::vec x(n);
    long total = 1;
    for (int i = 0; i < n; i++)
        total *= grid;
    for (long it = 0; it < total; it++)
    {
        long rem = it;
        for (int i = 0; i < n; i++)
        {
            x(i) = static_cast<double>(rem % grid) / (grid - 1);
            rem /= grid;
        }
        best = std::max(best, arma::as_scalar(x.t() * s * x));
    }
    REQUIRE(vertex.objective_value >= best - 1e-9);
}
