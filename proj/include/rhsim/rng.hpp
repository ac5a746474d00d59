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

#ifndef rhsim_rng_H
#define rhsim_rng_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace rhsim
{

// One finalization step of the splitmix64 mixer.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derives the seed of the (point, trial) substream from a master seed.
// This is the documented substream rule: every trial of every sweep point
// gets an independent generator, so records do not depend on evaluation
// order or worker count.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t trial)
{
    std::uint64_t x = splitmix64(seed);
    x = splitmix64(x ^ (0x9E3779B97F4A7C15ULL * (point + 1)));
    x = splitmix64(x ^ (0xC2B2AE3D27D4EB4FULL * (trial + 1)));
    return x;
}

// Deterministic random source. The engine is std::mt19937_64 (bit-exact by
// the standard); the uniform and normal transforms are implemented here so
// the draw sequence does not depend on the standard library's unspecified
// distribution algorithms.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal()
    {
        double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Circularly-symmetric complex normal CN(0, 1); consumes two uniforms.
    std::complex<double> cnormal()
    {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double r = std::sqrt(-std::log(u1));
        return std::polar(r, 2.0 * M_PI * u2);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace rhsim

#endif
