// misodelay: delay bounds and queue simulation for the multiuser MISO downlink
// Copyright (C) 2026 The misodelay authors
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

#ifndef MISODELAY_RANDOM_HPP
#define MISODELAY_RANDOM_HPP

#include <cstdint>
#include <random>

namespace misodelay
{
    using RandomStream = std::mt19937_64;

    /// Purposes for which independent substreams are derived from one master seed.
    enum class StreamPurpose : std::uint64_t
    {
        kSimulation = 1,
        kGainOracle = 2,
        kGainSampling = 3,
        kAssignment = 4,
        kValidation = 5,
    };

    inline std::uint64_t splitmix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Splitting rule: seed = splitmix64(splitmix64(master ^ splitmix64(purpose)) + index).
    /// Distinct (purpose, index) pairs give statistically independent mt19937_64 streams.
    inline std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t index)
    {
        const std::uint64_t p = splitmix64(static_cast<std::uint64_t>(purpose));
        return splitmix64(splitmix64(master ^ p) + index);
    }

    inline RandomStream make_stream(std::uint64_t master, StreamPurpose purpose, std::uint64_t index)
    {
        return RandomStream(derive_seed(master, purpose, index));
    }
} // namespace misodelay

#endif // MISODELAY_RANDOM_HPP
