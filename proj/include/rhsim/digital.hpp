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

#ifndef rhsim_digital_H
#define rhsim_digital_H

#include <armadillo>
#include <stdexcept>

#include "rhsim/channel.hpp"
#include "rhsim/holographic.hpp"

namespace rhsim
{

// Baseband equivalent channel G = Diag(sqrt(upsilon)) H Diag(xi) Phi, K x M.
struct BasebandChannel
{
    arma::cx_mat g;

    int users() const { return static_cast<int>(g.n_rows); }
    int feeds() const { return static_cast<int>(g.n_cols); }
};

inline BasebandChannel baseband_channel(const ChannelSet &channels, const SwitchPattern &pattern,
                                        const ExcitingWaveCircuit &circuit)
{
    const int n = circuit.elements();
    if (channels.elements() != n || static_cast<int>(pattern.xi.n_elem) != n)
        throw std::invalid_argument("baseband_channel: dimension mismatch");

    arma::cx_mat h = channel_matrix(channels);
    arma::vec mask = pattern.as_real();
    BasebandChannel bb;
    bb.g = arma::diagmat(arma::conv_to<arma::cx_vec>::from(arma::sqrt(channels.upsilon))) * h *
           arma::diagmat(arma::conv_to<arma::cx_vec>::from(mask)) * circuit.phi;
    return bb;
}

// SVD beamformers: per-stream unit-norm precoders (columns of v), combiners
// (columns of u, applied as u_k^H), and singular values in descending order.
// Each column pair carries the fixed phase convention that the
// largest-magnitude entry of the right-singular vector is real positive,
// which makes results reproducible bit for bit.
struct SvdBeamformers
{
    arma::cx_mat v;   // feeds x streams
    arma::cx_mat u;   // users x streams
    arma::vec lambda; // streams, descending
    bool rank_deficient = false;

    int streams() const { return static_cast<int>(lambda.n_elem); }
};

inline SvdBeamformers svd_beamformers(const BasebandChannel &bb, int streams)
{
    const int k = bb.users();
    const int m = bb.feeds();
    if (streams < 1 || streams > std::min(k, m))
        throw std::invalid_argument("svd_beamformers: streams must be in [1, min(K, M)]");

    arma::cx_mat u_full, v_full;
    arma::vec s;
    if (!arma::svd(u_full, s, v_full, bb.g))
        throw std::runtime_error("svd_beamformers: SVD failed");

    SvdBeamformers bf;
    bf.u = u_full.cols(0, streams - 1);
    bf.v = v_full.cols(0, streams - 1);
    bf.lambda = s.head(streams);

    // flush numerically dead streams to exactly zero
    const double cutoff = bf.lambda(0) * 1e-12;
    for (int j = 0; j < streams; j++)
        if (bf.lambda(j) <= cutoff)
        {
            bf.lambda(j) = 0.0;
            bf.rank_deficient = true;
        }

    for (int j = 0; j < streams; j++)
    {
        arma::uword imax = arma::abs(bf.v.col(j)).index_max();
        std::complex<double> rot = std::polar(1.0, -std::arg(bf.v(imax, j)));
        bf.v.col(j) *= rot;
        bf.u.col(j) *= rot;
    }
    return bf;
}

} // namespace rhsim

#endif
