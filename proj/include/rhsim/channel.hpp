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

#ifndef rhsim_channel_H
#define rhsim_channel_H

#include <armadillo>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rhsim/rng.hpp"

namespace rhsim
{

inline double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / M_PI; }

// Planar array, spacings measured in carrier wavelengths. Element (nx, ny)
// maps to flat index nx + ny * n_x (horizontal index runs fastest).
struct ArrayGeometry
{
    int n_x = 1;
    int n_y = 1;
    double spacing_x = 0.5;
    double spacing_y = 0.5;

    int elements() const { return n_x * n_y; }

    void validate() const
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("ArrayGeometry: element counts must be >= 1");
        if (spacing_x <= 0.0 || spacing_y <= 0.0)
            throw std::invalid_argument("ArrayGeometry: spacings must be > 0");
    }
};

// Clustered path statistics. Means are drawn uniformly from the given degree
// ranges; per-path angles are Gaussian around the cluster mean with the
// given standard deviations.
struct ClusterSpec
{
    int num_clusters = 8;
    int paths_per_cluster = 10;
    double elevation_mean_min_deg = 0.0;
    double elevation_mean_max_deg = 180.0;
    double azimuth_mean_min_deg = 0.0;
    double azimuth_mean_max_deg = 360.0;
    double elevation_spread_deg = 7.5;
    double azimuth_spread_deg = 7.5;

    int paths() const { return num_clusters * paths_per_cluster; }

    void validate() const
    {
        if (num_clusters < 1 || paths_per_cluster < 1)
            throw std::invalid_argument("ClusterSpec: counts must be >= 1");
        if (elevation_spread_deg < 0.0 || azimuth_spread_deg < 0.0)
            throw std::invalid_argument("ClusterSpec: spreads must be >= 0");
        if (elevation_mean_min_deg < 0.0 || elevation_mean_max_deg > 180.0 ||
            elevation_mean_min_deg > elevation_mean_max_deg)
            throw std::invalid_argument("ClusterSpec: elevation mean range must lie in [0, 180] deg");
        if (azimuth_mean_min_deg < 0.0 || azimuth_mean_max_deg > 360.0 ||
            azimuth_mean_min_deg > azimuth_mean_max_deg)
            throw std::invalid_argument("ClusterSpec: azimuth mean range must lie in [0, 360] deg");
    }
};

// Small-scale channel vectors plus linear large-scale gains, one per user.
struct ChannelSet
{
    std::vector<arma::cx_vec> h; // length-N small-scale channel of each user
    arma::vec upsilon;           // linear large-scale gain of each user

    int users() const { return static_cast<int>(h.size()); }
    int elements() const { return h.empty() ? 0 : static_cast<int>(h[0].n_elem); }
};

struct PathAngles
{
    double elevation_rad = 0.0;
    double azimuth_rad = 0.0;
};

// Departure steering vector of the planar array. Entry for element (nx, ny):
//   exp(-j 2 pi (dx nx sin(el) cos(az) + dy ny sin(el) sin(az)))
// with dx, dy in wavelengths; the (0, 0) entry is always 1.
inline arma::cx_vec steering_vector(double elevation_rad, double azimuth_rad, const ArrayGeometry &geom)
{
    geom.validate();
    const double se = std::sin(elevation_rad);
    const double px = geom.spacing_x * se * std::cos(azimuth_rad);
    const double py = geom.spacing_y * se * std::sin(azimuth_rad);

    arma::cx_vec a(geom.elements());
    for (int ny = 0; ny < geom.n_y; ny++)
        for (int nx = 0; nx < geom.n_x; nx++)
        {
            double phase = -2.0 * M_PI * (px * nx + py * ny);
            a(nx + ny * geom.n_x) = std::polar(1.0, phase);
        }
    return a;
}

// Draws the departure angles of all clusters and paths. Per cluster the mean
// pair is uniform over the configured ranges; per path, Gaussian perturbation
// with the configured spreads. Elevation is clamped to [0, pi] afterwards;
// azimuth wraps naturally inside the steering phases. Output is grouped by
// cluster, paths_per_cluster entries each.
inline std::vector<PathAngles> sample_path_angles(const ClusterSpec &spec, Rng &rng)
{
    spec.validate();
    std::vector<PathAngles> out;
    out.reserve(spec.paths());

    const double sig_el = deg2rad(spec.elevation_spread_deg);
    const double sig_az = deg2rad(spec.azimuth_spread_deg);

    for (int c = 0; c < spec.num_clusters; c++)
    {
        double mu_el = deg2rad(rng.uniform(spec.elevation_mean_min_deg, spec.elevation_mean_max_deg));
        double mu_az = deg2rad(rng.uniform(spec.azimuth_mean_min_deg, spec.azimuth_mean_max_deg));
        for (int p = 0; p < spec.paths_per_cluster; p++)
        {
            double el = mu_el + sig_el * rng.normal();
            double az = mu_az + sig_az * rng.normal();
            el = std::clamp(el, 0.0, M_PI);
            out.push_back({el, az});
        }
    }
    return out;
}

// Generates the clustered downlink channel of all users:
//   h_k = sqrt(1 / (Lc Lp)) * sum_paths alpha * a(el, az),  alpha ~ CN(0, 1)
// and large-scale gains upsilon_k = beta_k * mean, beta_k uniform on
// [0.5, 1.5], mean the linear value of mean_large_scale_db.
//
// Draw order (fixed, for reproducibility): per user, per cluster the two
// means, then per path elevation, azimuth, alpha; after all users, one beta
// per user.
inline ChannelSet generate_channel(int users, const ArrayGeometry &geom, const ClusterSpec &spec,
                                   double mean_large_scale_db, Rng &rng)
{
    if (users < 1)
        throw std::invalid_argument("generate_channel: users must be >= 1");
    geom.validate();
    spec.validate();

    const int n = geom.elements();
    const double scale = std::sqrt(1.0 / spec.paths());
    const double sig_el = deg2rad(spec.elevation_spread_deg);
    const double sig_az = deg2rad(spec.azimuth_spread_deg);

    ChannelSet set;
    set.h.reserve(users);
    for (int k = 0; k < users; k++)
    {
        arma::cx_vec hk(n, arma::fill::zeros);
        for (int c = 0; c < spec.num_clusters; c++)
        {
            double mu_el = deg2rad(rng.uniform(spec.elevation_mean_min_deg, spec.elevation_mean_max_deg));
            double mu_az = deg2rad(rng.uniform(spec.azimuth_mean_min_deg, spec.azimuth_mean_max_deg));
            for (int p = 0; p < spec.paths_per_cluster; p++)
            {
                double el = std::clamp(mu_el + sig_el * rng.normal(), 0.0, M_PI);
                double az = mu_az + sig_az * rng.normal();
                std::complex<double> alpha = rng.cnormal();
                hk += alpha * steering_vector(el, az, geom);
            }
        }
        set.h.push_back(scale * hk);
    }

    const double mean_linear = std::pow(10.0, mean_large_scale_db / 10.0);
    set.upsilon.set_size(users);
    for (int k = 0; k < users; k++)
        set.upsilon(k) = rng.uniform(0.5, 1.5) * mean_linear;

    return set;
}

// Row-k-is-h_k^H channel matrix, K x N.
inline arma::cx_mat channel_matrix(const ChannelSet &set)
{
    const int k = set.users();
    const int n = set.elements();
    arma::cx_mat h(k, n);
    for (int i = 0; i < k; i++)
        h.row(i) = set.h[i].t(); // .t() is the Hermitian transpose
    return h;
}

} // namespace rhsim

#endif
