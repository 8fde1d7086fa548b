// SPDX-License-Identifier: Apache-2.0
//
// mrpchan - monostatic background radio channel simulator with multi-reference-point composition
// Copyright (C) 2026 mrpchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mrpchan
{

// Deterministic hierarchical random stream.
//
// A stream is identified by a 64-bit key derived from the root seed and the fork path.
// fork(id) derives an independent child stream without advancing the parent, so a fixed
// (root seed, fork path) pair always yields bit-identical draw sequences while disjoint
// paths are statistically independent. Every draw consumes a fixed number of engine
// outputs (normal() uses exactly two), keeping layouts stable across code paths.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t root_seed)
        : key_(mix(root_seed ^ kRootSalt)), eng_(key_)
    {
    }

    // Derive an independent substream; const, never advances this stream.
    RandomStream fork(std::uint64_t id) const
    {
        return RandomStream(mix(key_ ^ mix(id + kForkSalt)), forked_tag{});
    }

    std::uint64_t key() const
    {
        return key_;
    }

    // Raw 64-bit engine output.
    std::uint64_t raw()
    {
        return eng_();
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer on [lo, hi], both ends inclusive.
    int uniform_int(int lo, int hi)
    {
        return lo + static_cast<int>(uniform() * (static_cast<double>(hi) - static_cast<double>(lo) + 1.0));
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms, no caching.
    double normal()
    {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1 - u1), finite since 1 - u1 in (0, 1]
        return r * std::cos(2.0 * kPi * u2);
    }

    double normal(double mu, double sigma)
    {
        return mu + sigma * normal();
    }

    // Random sign in {-1, +1}, consumes one uniform.
    double sign()
    {
        return uniform() < 0.5 ? -1.0 : 1.0;
    }

  private:
    struct forked_tag
    {
    };

    RandomStream(std::uint64_t key, forked_tag) : key_(key), eng_(key)
    {
    }

    // splitmix64 finalizer; avalanches all input bits.
    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t kRootSalt = 0x6d72706368616e00ULL;
    static constexpr std::uint64_t kForkSalt = 0xa5a5a5a55a5a5a5aULL;
    static constexpr double kPi = 3.14159265358979323846; // pi

    std::uint64_t key_;
    std::mt19937_64 eng_;
};

} // namespace mrpchan
