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

#ifndef rhsim_holographic_H
#define rhsim_holographic_H

#include <armadillo>
#include <cmath>
#include <stdexcept>

#include "rhsim/channel.hpp"

namespace rhsim
{

class EigSolverError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Fixed feed-to-element propagation matrix of the surface, N x M, every
// entry of modulus 1/sqrt(N).
struct ExcitingWaveCircuit
{
    arma::cx_mat phi;

    int elements() const { return static_cast<int>(phi.n_rows); }
    int feeds() const { return static_cast<int>(phi.n_cols); }
};

// Builds the calibrated exciting-wave circuit. With dft_2pi (default) entry
// (n, m) is (1/sqrt(N)) exp(j 2 pi (n-1)(m-1) / N), i.e. scaled DFT columns,
// which keeps distinct columns orthogonal. dft_2pi = false reproduces the
// same expression without the 2 pi factor.
inline ExcitingWaveCircuit build_exciting_wave_circuit(int n, int m, bool dft_2pi = true)
{
    if (m < 1)
        throw std::invalid_argument("build_exciting_wave_circuit: feeds must be >= 1");
    if (m > n)
        throw std::invalid_argument("build_exciting_wave_circuit: feeds must not exceed elements");

    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    const double unit = (dft_2pi ? 2.0 * M_PI : 1.0) / static_cast<double>(n);

    ExcitingWaveCircuit c;
    c.phi.set_size(n, m);
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++)
            c.phi(i, j) = std::polar(amp, unit * i * j);
    return c;
}

// Amplitude-controlled element coefficient of the legacy (non-switched)
// surface: (cos(object_phase - reference_phase) + 1) / 2, in [0, 1].
inline double legacy_amplitude_coefficient(double object_phase, double reference_phase)
{
    return (std::cos(object_phase - reference_phase) + 1.0) / 2.0;
}

// Binary ON/OFF state of each element plus the achieved sum-path-gain value.
struct SwitchPattern
{
    arma::uvec xi;
    double objective_value = 0.0;

    int active() const { return static_cast<int>(arma::accu(xi)); }

    arma::vec as_real() const { return arma::conv_to<arma::vec>::from(xi); }
};

// Q and its lifted form. Q is Hermitian PSD with
//   sum_k ||h_k^H Diag(xi) Phi||^2 = xi^T Q xi  for every binary xi;
// q_lifted is the (N+1) x (N+1) bordered matrix [[Q, Q 1], [1^T Q, 0]] the
// +-1 reformulation maximizes over.
struct GainMatrix
{
    arma::cx_mat q;
    arma::cx_mat q_lifted;

    int elements() const { return static_cast<int>(q.n_rows); }

    // Real symmetric part; binary (real) patterns only sense this.
    arma::mat q_real() const { return (arma::real(q) + arma::real(q).t()) / 2.0; }
};

// Objective xi^T Q xi evaluated for a real 0/1 vector.
inline double switch_objective(const GainMatrix &gain, const arma::uvec &xi)
{
    arma::vec x = arma::conv_to<arma::vec>::from(xi);
    return arma::as_scalar(x.t() * gain.q_real() * x);
}

// Assembles Q = sum_{k,m} (1/N) q_{k,m} q_{k,m}^H with
// q_{k,m}[n] = e^{j phase(Phi[n,m])} conj(h_k[n]). Large-scale gains are
// excluded unless upsilon_weighted is set (experimental variant).
inline GainMatrix build_gain_matrix(const ChannelSet &channels, const ExcitingWaveCircuit &circuit,
                                    bool upsilon_weighted = false)
{
    const int n = circuit.elements();
    const int m = circuit.feeds();
    if (channels.elements() != n)
        throw std::invalid_argument("build_gain_matrix: channel length does not match circuit elements");

    const double root_n = std::sqrt(static_cast<double>(n));

    GainMatrix gain;
    gain.q.zeros(n, n);
    for (int k = 0; k < channels.users(); k++)
    {
        const arma::cx_vec hconj = arma::conj(channels.h[k]);
        const double w = (upsilon_weighted ? channels.upsilon(k) : 1.0) / n;
        for (int j = 0; j < m; j++)
        {
            // e^{j phi_{n,m}} = sqrt(N) * Phi[n,m] since |Phi[n,m]| = 1/sqrt(N)
            arma::cx_vec qv = (root_n * circuit.phi.col(j)) % hconj;
            gain.q += w * (qv * qv.t());
        }
    }

    gain.q_lifted.zeros(n + 1, n + 1);
    gain.q_lifted.submat(0, 0, n - 1, n - 1) = gain.q;
    arma::cx_vec q1 = gain.q * arma::cx_vec(arma::ones<arma::vec>(n), arma::zeros<arma::vec>(n));
    gain.q_lifted.submat(0, n, n - 1, n) = q1;
    gain.q_lifted.submat(n, 0, n, n - 1) = q1.t();
    return gain;
}

namespace detail
{

// more active elements first, then lexicographically smallest
inline bool pattern_tie_prefer(const arma::uvec &cand, const arma::uvec &best)
{
    const int ca = static_cast<int>(arma::accu(cand));
    const int ba = static_cast<int>(arma::accu(best));
    if (ca != ba)
        return ca > ba;
    for (arma::uword i = 0; i < cand.n_elem; i++)
        if (cand(i) != best(i))
            return cand(i) < best(i);
    return false;
}

inline void keep_better(const GainMatrix &gain, const arma::uvec &cand, SwitchPattern &best)
{
    double obj = switch_objective(gain, cand);
    if (obj > best.objective_value ||
        (obj == best.objective_value && pattern_tie_prefer(cand, best.xi)))
    {
        best.xi = cand;
        best.objective_value = obj;
    }
}

} // namespace detail

// Eigen-decomposition solver for the switch pattern. Takes the leading
// eigenvector of the symmetrized lifted matrix, rounds entrywise to +-1
// (zeros to +1), fixes the sign so the auxiliary coordinate is +1, and maps
// back to {0,1}. The rounded pattern, its complement and the all-on pattern
// are all evaluated and the best kept, so the result is never worse than
// all-on.
inline SwitchPattern solve_switch_pattern_ed(const GainMatrix &gain)
{
    const int n = gain.elements();

    arma::mat lifted = arma::real(gain.q_lifted);
    lifted = (lifted + lifted.t()) / 2.0;

    arma::vec eigval;
    arma::mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, lifted))
        throw EigSolverError("solve_switch_pattern_ed: eigen-decomposition failed");

    arma::vec lead = eigvec.col(eigvec.n_cols - 1); // eig_sym sorts ascending
    if (lead(n) < 0.0)
        lead = -lead;

    arma::uvec xi(n);
    for (int i = 0; i < n; i++)
        xi(i) = lead(i) >= 0.0 ? 1u : 0u; // (sign + 1) / 2 with 0 -> +1

    arma::uvec complement(n);
    for (int i = 0; i < n; i++)
        complement(i) = 1u - xi(i);

    SwitchPattern best;
    best.xi = arma::uvec(n, arma::fill::ones);
    best.objective_value = switch_objective(gain, best.xi);
    detail::keep_better(gain, xi, best);
    detail::keep_better(gain, complement, best);
    return best;
}

// Exhaustive maximizer of xi^T Q xi over {0,1}^N, the verification oracle.
// Ties prefer more active elements, then the lexicographically smallest
// pattern; the result is independent of enumeration order.
inline SwitchPattern brute_force_switch_pattern(const GainMatrix &gain)
{
    const int n = gain.elements();
    if (n > 20)
        throw std::invalid_argument("brute_force_switch_pattern: N > 20 enumeration rejected");

    const arma::mat s = gain.q_real();

    SwitchPattern best;
    best.xi = arma::uvec(n, arma::fill::zeros);
    best.objective_value = 0.0;

    std::vector<int> active;
    active.reserve(n);
    arma::uvec xi(n);
    for (std::uint64_t mask = 0; mask < (1ull << n); mask++)
    {
        active.clear();
        for (int i = 0; i < n; i++)
        {
            xi(i) = (mask >> i) & 1u;
            if (xi(i))
                active.push_back(i);
        }
        double obj = 0.0;
        for (int i : active)
            for (int j : active)
                obj += s(i, j);
        if (obj > best.objective_value ||
            (obj == best.objective_value && detail::pattern_tie_prefer(xi, best.xi)))
        {
            best.xi = xi;
            best.objective_value = obj;
        }
    }

    // re-evaluate through the shared path so oracle and solver objectives
    // are computed identically
    best.objective_value = switch_objective(gain, best.xi);
    return best;
}

} // namespace rhsim

#endif
