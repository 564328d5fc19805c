// SPDX-License-Identifier: Apache-2.0
//
// hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
// Copyright (C) 2026 hydrolink contributors
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

#ifndef HYDROLINK_CORE_SEEDING_HPP
#define HYDROLINK_CORE_SEEDING_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace hydrolink {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL) noexcept
{
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// Stable per-stream seed from (global seed, stream name, trial index).
/// Trial i always maps to the same seed regardless of how many trials run.
constexpr std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream, std::uint64_t trial = 0) noexcept
{
    return splitmix64(splitmix64(global_seed ^ fnv1a64(stream)) + splitmix64(trial + 0x632be59bd9b4e019ULL));
}

} // namespace hydrolink

#endif
