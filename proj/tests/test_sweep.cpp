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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rhsim/sweep.hpp"

using namespace rhsim;

namespace
{

Scenario small_scenario()
{
    Scenario sc;
    sc.users = 2;
    sc.nx = 4;
    sc.ny = 2;
    sc.rf_chains = 2;
    sc.clusters = 2;
    sc.paths_per_cluster = 3;
    sc.trials = 3;
    sc.epsilon_t = 0.8;
    sc.epsilon_r = 0.8;
    sc.sweep_axis = SweepAxis::SnrDb;
    sc.sweep_values = {20.0, 40.0};
    sc.seed = 11;
    return sc;
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("sweeps are deterministic and independent of the worker count")
{
    Scenario sc = small_scenario();
    auto a = run_sweep(sc, 1);
    auto b = run_sweep(sc, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i++)
    {
        REQUIRE(a[i].se_bit_per_hz == b[i].se_bit_per_hz);
        REQUIRE(a[i].ee_bit_per_j == b[i].ee_bit_per_j);
        REQUIRE(a[i].rho_w == b[i].rho_w);
        REQUIRE(a[i].shares == b[i].shares);
    }
}

TEST_CASE("record layout and mean rows")
{
    Scenario sc = small_scenario();
    auto records = run_sweep(sc);
    // (2 points) x (1 architecture) x (3 trials + 1 mean row)
    REQUIRE(records.size() == 8);

    for (int pi = 0; pi < 2; pi++)
    {
        double se = 0.0, ee = 0.0;
        for (int ti = 0; ti < 3; ti++)
        {
            const auto &rec = records[pi * 4 + ti];
            REQUIRE(rec.trial == ti);
            REQUIRE_FALSE(rec.is_mean);
            se += rec.se_bit_per_hz / 3.0;
            ee += rec.ee_bit_per_j / 3.0;
        }
        const auto &mean = records[pi * 4 + 3];
        REQUIRE(mean.is_mean);
        REQUIRE(mean.trial == -1);
        REQUIRE(mean.se_bit_per_hz == Catch::Approx(se).margin(1e-12));
        REQUIRE(mean.ee_bit_per_j == Catch::Approx(ee).margin(1e-12));
    }
}

TEST_CASE("snr sweeps fix the transmit power from the axis")
{
    Scenario sc = small_scenario();
    auto records = run_sweep(sc);
    // snr 20 dB: rho = 10^2 * 1e-12 / 1e-8 = 0.01 W
    REQUIRE(records[0].rho_w == Catch::Approx(0.01));
    // snr 40 dB: rho = 1 W
    REQUIRE(records[4].rho_w == Catch::Approx(1.0));
}

TEST_CASE("ideal-hardware epsilon point makes consider and ignore modes identical")
{
    Scenario sc = small_scenario();
    sc.sweep_axis = SweepAxis::Epsilon;
    sc.sweep_values = {1.0};
    sc.hwi_mode = HwiMode::Consider;
    auto consider = run_sweep(sc);
    sc.hwi_mode = HwiMode::Ignore;
    auto ignore = run_sweep(sc);
    REQUIRE(consider.back().is_mean);
    REQUIRE(std::abs(consider.back().ee_bit_per_j - ignore.back().ee_bit_per_j) <=
            1e-9 * consider.back().ee_bit_per_j);
}

TEST_CASE("iteration sweeps reuse channels and improve per round")
{
    Scenario sc = small_scenario();
    sc.sweep_axis = SweepAxis::Iterations;
    sc.sweep_values = {1, 2, 3, 4};
    sc.pmax_dbm = 30.0;
    auto records = run_sweep(sc);

    // per trial, EE as a function of the round count never decreases
    for (int ti = 0; ti < sc.trials; ti++)
    {
        double prev = 0.0;
        for (int pi = 0; pi < 4; pi++)
        {
            const auto &rec = records[pi * (sc.trials + 1) + ti];
            REQUIRE(rec.ee_bit_per_j >= prev - 1e-9 * std::max(prev, 1.0));
            prev = rec.ee_bit_per_j;
        }
    }
}

TEST_CASE("emitted CSV round-trips its mean rows")
{
    namespace fs = std::filesystem;
    Scenario sc = small_scenario();
    auto records = run_sweep(sc);
    fs::path dir = fs::temp_directory_path() / "rhsim_csv_test";
    fs::create_directories(dir);
    std::string path = (dir / "records.csv").string();
    emit_csv(records, path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "axis,axis_value,architecture,trial,is_mean,se_bit_per_hz,ee_bit_per_j,"
                      "rho_w,shares,seed,config_hash");

    int mean_rows = 0;
    std::string line;
    std::size_t idx = 0;
    while (std::getline(in, line))
    {
        REQUIRE(idx < records.size());
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        REQUIRE(fields.size() == 11);
        if (fields[4] == "1")
        {
            mean_rows++;
            REQUIRE(std::stod(fields[5]) ==
                    Catch::Approx(records[idx].se_bit_per_hz).epsilon(1e-8));
            REQUIRE(std::stod(fields[6]) ==
                    Catch::Approx(records[idx].ee_bit_per_j).epsilon(1e-8));
        }
        idx++;
    }
    REQUIRE(idx == records.size());
    REQUIRE(mean_rows == 2);

    // byte determinism of the writer
    std::string again = (dir / "records2.csv").string();
    emit_csv(records, again);
    REQUIRE(slurp(path) == slurp(again));
}

TEST_CASE("empty record lists produce a header-only file")
{
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rhsim_csv_test";
    fs::create_directories(dir);
    std::string path = (dir / "empty.csv").string();
    emit_csv({}, path);
    std::string content = slurp(path);
    REQUIRE(content == "axis,axis_value,architecture,trial,is_mean,se_bit_per_hz,ee_bit_per_j,"
                       "rho_w,shares,seed,config_hash\n");
}

TEST_CASE("config parsing applies defaults and rejects unknown keys by name")
{
    Scenario sc = scenario_from_json(nlohmann::json::parse(R"({"users": 4, "nx": 4, "ny": 4,
        "rf_chains": 4, "sweep": {"axis": "pmax_dbm", "values": [10, 20]}})"));
    REQUIRE(sc.users == 4);
    REQUIRE(sc.elements() == 16);
    REQUIRE(sc.sweep_axis == SweepAxis::PmaxDbm);
    REQUIRE(sc.bandwidth_hz == 20e6); // untouched default

    try
    {
        scenario_from_json(nlohmann::json::parse(R"({"userz": 4})"));
        FAIL("expected rejection");
    }
    catch (const std::invalid_argument &e)
    {
        REQUIRE(std::string(e.what()).find("userz") != std::string::npos);
    }

    try
    {
        scenario_from_json(nlohmann::json::parse(R"({"sweep": {"axis": "bogus", "values": [1]}})"));
        FAIL("expected rejection");
    }
    catch (const std::invalid_argument &e)
    {
        REQUIRE(std::string(e.what()).find("bogus") != std::string::npos);
    }

    REQUIRE_THROWS_AS(
        scenario_from_json(nlohmann::json::parse(R"({"hwi_mode": "sometimes"})")),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        scenario_from_json(nlohmann::json::parse(
            R"({"sweep": {"axis": "epsilon", "values": [0.9, 0.3]}})")),
        std::invalid_argument); // unsorted
    REQUIRE_THROWS_AS(
        scenario_from_json(nlohmann::json::parse(
            R"({"sweep": {"axis": "elements", "values": [15]}})")),
        std::invalid_argument); // not a perfect square
}

TEST_CASE("scenario hash is stable and key-sensitive")
{
    Scenario a = small_scenario();
    Scenario b = small_scenario();
    REQUIRE(scenario_hash(a) == scenario_hash(b));
    b.seed = 12;
    REQUIRE(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("full design returns internally consistent components")
{
    Scenario sc = small_scenario();
    Rng rng(substream_seed(sc.seed, 0, 0));
    ChannelSet ch = generate_channel(sc.users, sc.geometry(), sc.cluster_spec(),
                                     sc.mean_large_scale_db, rng);
    ArchitectureResult res = full_design(sc, ch);

    REQUIRE(res.kind == ArchitectureKind::RhsSwitch);
    REQUIRE(res.pattern.xi.n_elem == static_cast<arma::uword>(sc.elements()));
    REQUIRE(res.beamformers.streams() == sc.users);

    // recomputing the metrics from the returned parts reproduces the record
    arma::mat gains = pairwise_gains(res.baseband, res.beamformers);
    LinkMetrics again = link_metrics(gains, res.power.share, res.power.rho_w, sc.hardware(),
                                     res.power_model, sc.bandwidth_hz);
    REQUIRE(again.se_bit_per_hz == res.metrics.se_bit_per_hz);
    REQUIRE(again.ee_bit_per_j == res.metrics.ee_bit_per_j);

    // and the recorded pattern/beamformers reproduce the baseband channel
    ExcitingWaveCircuit circuit = build_exciting_wave_circuit(sc.elements(), sc.rf_chains,
                                                              sc.dft_use_2pi);
    BasebandChannel bb = baseband_channel(ch, res.pattern, circuit);
    REQUIRE(arma::abs(bb.g - res.baseband.g).max() == 0.0);
}

TEST_CASE("plot script and manifest are written deterministically")
{
    namespace fs = std::filesystem;
    Scenario sc = small_scenario();
    fs::path dir = fs::temp_directory_path() / "rhsim_emit_test";
    fs::create_directories(dir);

    std::string plot1 = (dir / "p1.script").string();
    std::string plot2 = (dir / "p2.script").string();
    emit_plot_script(sc, "records.csv", plot1);
    emit_plot_script(sc, "records.csv", plot2);
    REQUIRE(slurp(plot1) == slurp(plot2));
    REQUIRE(slurp(plot1).find("snr_db") != std::string::npos);

    std::string m1 = (dir / "m1.json").string();
    write_manifest(sc, "records.csv", m1);
    auto j = nlohmann::json::parse(slurp(m1));
    REQUIRE(j["config_hash"] == scenario_hash(sc));
    REQUIRE(j["seed"] == sc.seed);
    REQUIRE(j["records"] == "records.csv");
}
