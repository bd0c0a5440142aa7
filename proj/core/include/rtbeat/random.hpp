// Copyright 2026 The rtbeat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RTBEAT__RANDOM_HPP_
#define RTBEAT__RANDOM_HPP_

#include <cstdint>
#include <random>

namespace rtbeat {

// mt19937_64 output is fixed by the standard; the helpers below avoid the
// implementation-defined std distributions so replays match across toolchains.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

__extension__ typedef unsigned __int128 U128;

// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n)
{
  return static_cast<std::uint64_t>((static_cast<U128>(rng()) * n) >> 64);
}

}  // namespace rtbeat

#endif  // RTBEAT__RANDOM_HPP_
