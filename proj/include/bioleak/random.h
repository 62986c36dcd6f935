// Copyright 2026 The bioleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIOLEAK_RANDOM_H_
#define BIOLEAK_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bioleak {

using Rng = std::mt19937_64;

// Labels separating the independent random streams of an experiment. A
// stream is addressed by (root seed, label, indices...), so the numbers a
// user or shard sees never depend on scheduling order.
enum class StreamLabel : std::uint64_t {
  kEnrollmentVector = 1,
  kAmbiguation = 2,
  kMeasurementNoise = 3,
  kImpostorProbe = 4,
  kMonteCarlo = 5,
  kProjection = 6,
  kAttack = 7,
  kExperiment = 8,
};

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t root, StreamLabel label,
                                std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = Mix64(root ^ Mix64(static_cast<std::uint64_t>(label)));
  for (std::uint64_t p : path) s = Mix64(s ^ Mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline Rng MakeStream(std::uint64_t root, StreamLabel label,
                      std::initializer_list<std::uint64_t> path = {}) {
  return Rng(DeriveSeed(root, label, path));
}

}  // namespace bioleak

#endif  // BIOLEAK_RANDOM_H_
