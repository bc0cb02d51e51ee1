// SPDX-License-Identifier: Apache-2.0
//
// bfcsim - beamforming-cancellation link simulator for mmWave full-duplex
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

#ifndef BFCSIM_RNG_HPP
#define BFCSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace bfc
{

// SplitMix64 finalizer, used to spread (seed, index) pairs into engine seeds.
inline std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// Seed for the RNG stream of a given trial. Streams derived from the same
// master seed but different indices are independent for simulation purposes;
// parallel and serial sweeps draw identical values per trial.
inline std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index)
{
    return mix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Random stream with explicit, engine-version-independent samplers. All
// distributions are derived from raw 64-bit draws so that a given seed
// produces a fixed draw sequence regardless of standard-library internals.
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    static RngStream for_trial(std::uint64_t master_seed, std::uint64_t trial)
    {
        return RngStream(derive_stream_seed(master_seed, trial));
    }

    std::uint64_t raw() { return eng_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1); safe as a log() argument.
    double uniform_open() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [lo, hi], both ends inclusive.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi)
    {
        std::uint64_t n = hi - lo + 1;
        return lo + static_cast<std::uint64_t>((static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

    // Standard normal via Box-Muller (two uniforms per call, no cached state).
    double gaussian()
    {
        double u1 = uniform_open();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Circularly-symmetric complex normal CN(0, 1).
    std::complex<double> cgauss()
    {
        double u1 = uniform_open();
        double u2 = uniform();
        double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace bfc

#endif
