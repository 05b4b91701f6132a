// util/rng.h

// Copyright 2026  xltts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef XLTTS_UTIL_RNG_H_
#define XLTTS_UTIL_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace xltts {

// Deterministic RNG. All sampling goes through hand-rolled transforms on top
// of mt19937_64 so that a (seed, call sequence) pair produces identical
// streams on every platform; std::normal_distribution and friends are
// implementation-defined and are deliberately not used.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed), seed_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * (1.0 / 9007199254740992.0);
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Inclusive integer range.
  int UniformInt(int lo, int hi);

  // Standard normal via Box-Muller (the spare is cached).
  double Normal();

  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  // Independent child stream; forking does not advance this stream.
  Rng Fork(uint64_t stream) const;

  uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

uint64_t Fnv1a64(const void* data, size_t len);
uint64_t Fnv1a64(const std::string& s);
uint64_t HashCombine(uint64_t a, uint64_t b);

}  // namespace xltts

#endif  // XLTTS_UTIL_RNG_H_
