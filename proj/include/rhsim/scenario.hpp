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

#ifndef rhsim_scenario_H
#define rhsim_scenario_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhsim/architectures.hpp"
#include "rhsim/channel.hpp"
#include "rhsim/power.hpp"

namespace rhsim
{

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

enum class SweepAxis
{
    SnrDb,
    PmaxDbm,
    Epsilon,
    RfChains,
    Users,
    Elements,
    Iterations,
};

inline std::string to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::PmaxDbm: return "pmax_dbm";
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::RfChains: return "rf_chains";
    case SweepAxis::Users: return "users";
    case SweepAxis::Elements: return "elements";
    case SweepAxis::Iterations: return "iterations";
    }
    throw std::logic_error("to_string: unknown sweep axis");
}

inline SweepAxis sweep_axis_from_string(const std::string &s)
{
    if (s == "snr_db") return SweepAxis::SnrDb;
    if (s == "pmax_dbm") return SweepAxis::PmaxDbm;
    if (s == "epsilon") return SweepAxis::Epsilon;
    if (s == "rf_chains") return SweepAxis::RfChains;
    if (s == "users") return SweepAxis::Users;
    if (s == "elements") return SweepAxis::Elements;
    if (s == "iterations") return SweepAxis::Iterations;
    throw std::invalid_argument("sweep.axis: unknown axis '" + s + "'");
}

enum class HwiMode
{
    Consider, // Algorithm-1 power sharing, impaired-model power optimization
    Ignore,   // ideal-model design, impaired evaluation
};

// One batch-run description: system dimensions, hardware, power prices,
// Monte-Carlo size and the sweep to run. Desk-scale defaults; the reference
// full-scale settings are applied by paper_scale().
struct Scenario
{
    // channel
    int users = 8;
    int nx = 8;
    int ny = 8;
    double spacing_wavelengths = 0.5;
    int clusters = 8;
    int paths_per_cluster = 10;
    double elevation_spread_deg = 7.5;
    double azimuth_spread_deg = 7.5;
    double mean_large_scale_db = -80.0;
    std::uint64_t seed = 1;

    // surface
    int rf_chains = 8;
    bool dft_use_2pi = true;
    bool spgm_upsilon_weighted = false;

    // hardware and power
    double pmax_dbm = 30.0;
    double epsilon_t = 1.0;
    double epsilon_r = 1.0;
    double noise_dbm = -90.0;
    double bandwidth_hz = 20e6;
    double amplifier_efficiency = 0.39;
    double p_syn_w = 2.0;
    double p_rf_w = 1.0;
    double p_ps_w = 0.03;
    double p_sw_w = 0.001;
    double gd_step = 0.0;
    double gd_tol = 1e-6;
    int gd_max_iter = 100000;
    int alternation_rounds = 4;

    // experiment
    std::vector<ArchitectureKind> architectures = {ArchitectureKind::RhsSwitch};
    double kappa = 0.5;
    int trials = 50;
    SweepAxis sweep_axis = SweepAxis::SnrDb;
    std::vector<double> sweep_values = {0, 10, 20, 30, 40, 50, 60};
    HwiMode hwi_mode = HwiMode::Consider;

    int elements() const { return nx * ny; }

    ArrayGeometry geometry() const
    {
        return {nx, ny, spacing_wavelengths, spacing_wavelengths};
    }

    ClusterSpec cluster_spec() const
    {
        ClusterSpec spec;
        spec.num_clusters = clusters;
        spec.paths_per_cluster = paths_per_cluster;
        spec.elevation_spread_deg = elevation_spread_deg;
        spec.azimuth_spread_deg = azimuth_spread_deg;
        return spec;
    }

    HardwareProfile hardware() const
    {
        return {epsilon_t, epsilon_r, dbm_to_watt(noise_dbm)};
    }

    PowerModel prices() const
    {
        PowerModel pm;
        pm.amplifier_efficiency = amplifier_efficiency;
        pm.p_syn_w = p_syn_w;
        pm.p_rf_w = p_rf_w;
        pm.p_ps_w = p_ps_w;
        pm.p_sw_w = p_sw_w;
        return pm;
    }

    GradientOptions gradient_options() const
    {
        GradientOptions g;
        g.step = gd_step;
        g.tol_rel = gd_tol;
        g.max_iter = gd_max_iter;
        return g;
    }

    // reference full-scale surface
    void paper_scale()
    {
        nx = 16;
        ny = 16;
        trials = std::max(trials, 100);
    }

    void validate() const
    {
        geometry().validate();
        cluster_spec().validate();
        hardware().validate();
        prices().validate();
        if (users < 1)
            throw std::invalid_argument("users: must be >= 1");
        if (rf_chains < 1 || rf_chains > elements())
            throw std::invalid_argument("rf_chains: must lie in [1, nx*ny]");
        if (trials < 1)
            throw std::invalid_argument("trials: must be >= 1");
        if (alternation_rounds < 1)
            throw std::invalid_argument("alternation_rounds: must be >= 1");
        if (kappa < 0.0 || kappa > 1.0)
            throw std::invalid_argument("kappa: must lie in [0, 1]");
        if (sweep_values.empty())
            throw std::invalid_argument("sweep.values: must not be empty");
        if (!std::is_sorted(sweep_values.begin(), sweep_values.end()))
            throw std::invalid_argument("sweep.values: must be sorted ascending");
        if (architectures.empty())
            throw std::invalid_argument("architectures: must not be empty");

        for (double v : sweep_values)
        {
            switch (sweep_axis)
            {
            case SweepAxis::Epsilon:
                if (v < 0.0 || v > 1.0)
                    throw std::invalid_argument("sweep.values: epsilon values must lie in [0, 1]");
                break;
            case SweepAxis::RfChains:
            case SweepAxis::Users:
            case SweepAxis::Iterations:
                if (v < 1.0 || v != std::floor(v))
                    throw std::invalid_argument("sweep.values: " + to_string(sweep_axis) +
                                                " values must be positive integers");
                break;
            case SweepAxis::Elements:
            {
                double r = std::sqrt(v);
                if (v < 1.0 || r != std::floor(r))
                    throw std::invalid_argument("sweep.values: elements values must be perfect squares");
                break;
            }
            default:
                break;
            }
        }
    }
};

namespace detail
{

inline const std::set<std::string> &known_scenario_keys()
{
    static const std::set<std::string> keys = {
        "users", "nx", "ny", "spacing_wavelengths", "clusters", "paths_per_cluster",
        "elevation_spread_deg", "azimuth_spread_deg", "mean_large_scale_db", "seed",
        "rf_chains", "dft_use_2pi", "spgm_upsilon_weighted",
        "pmax_dbm", "epsilon_t", "epsilon_r", "noise_dbm", "bandwidth_hz",
        "amplifier_efficiency", "p_syn_w", "p_rf_w", "p_ps_w", "p_sw_w",
        "gd_step", "gd_tol", "gd_max_iter", "alternation_rounds",
        "architectures", "kappa", "trials", "sweep", "hwi_mode"};
    return keys;
}

} // namespace detail

// Parses a scenario from JSON; keys not present keep their defaults, keys
// not known are rejected by name.
inline Scenario scenario_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be an object");

    for (auto it = j.begin(); it != j.end(); ++it)
        if (!detail::known_scenario_keys().count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");

    Scenario sc;
    auto get = [&](const char *key, auto &field) {
        if (j.contains(key))
            field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };

    get("users", sc.users);
    get("nx", sc.nx);
    get("ny", sc.ny);
    get("spacing_wavelengths", sc.spacing_wavelengths);
    get("clusters", sc.clusters);
    get("paths_per_cluster", sc.paths_per_cluster);
    get("elevation_spread_deg", sc.elevation_spread_deg);
    get("azimuth_spread_deg", sc.azimuth_spread_deg);
    get("mean_large_scale_db", sc.mean_large_scale_db);
    get("seed", sc.seed);
    get("rf_chains", sc.rf_chains);
    get("dft_use_2pi", sc.dft_use_2pi);
    get("spgm_upsilon_weighted", sc.spgm_upsilon_weighted);
    get("pmax_dbm", sc.pmax_dbm);
    get("epsilon_t", sc.epsilon_t);
    get("epsilon_r", sc.epsilon_r);
    get("noise_dbm", sc.noise_dbm);
    get("bandwidth_hz", sc.bandwidth_hz);
    get("amplifier_efficiency", sc.amplifier_efficiency);
    get("p_syn_w", sc.p_syn_w);
    get("p_rf_w", sc.p_rf_w);
    get("p_ps_w", sc.p_ps_w);
    get("p_sw_w", sc.p_sw_w);
    get("gd_step", sc.gd_step);
    get("gd_tol", sc.gd_tol);
    get("gd_max_iter", sc.gd_max_iter);
    get("alternation_rounds", sc.alternation_rounds);
    get("kappa", sc.kappa);
    get("trials", sc.trials);

    if (j.contains("architectures"))
    {
        sc.architectures.clear();
        for (const auto &tag : j.at("architectures"))
            sc.architectures.push_back(architecture_from_string(tag.get<std::string>()));
    }
    if (j.contains("sweep"))
    {
        const auto &sw = j.at("sweep");
        for (auto it = sw.begin(); it != sw.end(); ++it)
            if (it.key() != "axis" && it.key() != "values")
                throw std::invalid_argument("config: unknown key 'sweep." + it.key() + "'");
        if (sw.contains("axis"))
            sc.sweep_axis = sweep_axis_from_string(sw.at("axis").get<std::string>());
        if (sw.contains("values"))
            sc.sweep_values = sw.at("values").get<std::vector<double>>();
    }
    if (j.contains("hwi_mode"))
    {
        std::string mode = j.at("hwi_mode").get<std::string>();
        if (mode == "consider")
            sc.hwi_mode = HwiMode::Consider;
        else if (mode == "ignore")
            sc.hwi_mode = HwiMode::Ignore;
        else
            throw std::invalid_argument("hwi_mode: must be 'consider' or 'ignore', got '" + mode + "'");
    }

    sc.validate();
    return sc;
}

inline Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

// Canonical serialization, also the hashing input for run manifests.
inline nlohmann::json scenario_to_json(const Scenario &sc)
{
    nlohmann::json j;
    j["users"] = sc.users;
    j["nx"] = sc.nx;
    j["ny"] = sc.ny;
    j["spacing_wavelengths"] = sc.spacing_wavelengths;
    j["clusters"] = sc.clusters;
    j["paths_per_cluster"] = sc.paths_per_cluster;
    j["elevation_spread_deg"] = sc.elevation_spread_deg;
    j["azimuth_spread_deg"] = sc.azimuth_spread_deg;
    j["mean_large_scale_db"] = sc.mean_large_scale_db;
    j["seed"] = sc.seed;
    j["rf_chains"] = sc.rf_chains;
    j["dft_use_2pi"] = sc.dft_use_2pi;
    j["spgm_upsilon_weighted"] = sc.spgm_upsilon_weighted;
    j["pmax_dbm"] = sc.pmax_dbm;
    j["epsilon_t"] = sc.epsilon_t;
    j["epsilon_r"] = sc.epsilon_r;
    j["noise_dbm"] = sc.noise_dbm;
    j["bandwidth_hz"] = sc.bandwidth_hz;
    j["amplifier_efficiency"] = sc.amplifier_efficiency;
    j["p_syn_w"] = sc.p_syn_w;
    j["p_rf_w"] = sc.p_rf_w;
    j["p_ps_w"] = sc.p_ps_w;
    j["p_sw_w"] = sc.p_sw_w;
    j["gd_step"] = sc.gd_step;
    j["gd_tol"] = sc.gd_tol;
    j["gd_max_iter"] = sc.gd_max_iter;
    j["alternation_rounds"] = sc.alternation_rounds;
    j["kappa"] = sc.kappa;
    j["trials"] = sc.trials;
    std::vector<std::string> tags;
    for (auto kind : sc.architectures)
        tags.push_back(to_string(kind));
    j["architectures"] = tags;
    j["sweep"] = {{"axis", to_string(sc.sweep_axis)}, {"values", sc.sweep_values}};
    j["hwi_mode"] = sc.hwi_mode == HwiMode::Consider ? "consider" : "ignore";
    return j;
}

// FNV-1a over the canonical config dump; stable across runs and platforms.
inline std::string scenario_hash(const Scenario &sc)
{
    const std::string dump = scenario_to_json(sc).dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : dump)
    {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

} // namespace rhsim

#endif
