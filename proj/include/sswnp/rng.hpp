// Copyright 2026 The sswnp Authors
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

#ifndef SSWNP__RNG_HPP_
#define SSWNP__RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace sswnp
{

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// FNV-1a, used to turn stream labels ("latent", "noise", ...) into key parts.
constexpr std::uint64_t label_key(std::string_view label) noexcept
{
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Counter-based random stream: the n-th draw is a pure function of
/// (key, n). Streams are addressed by key tuples such as
/// (seed, epoch, batch, agent), so adding agents or batches never shifts
/// the draws of existing ones.
class RngStream
{
public:
  explicit RngStream(std::uint64_t key) noexcept : key_(mix64(key)) {}

  /// Stream keyed by an ordered tuple of integers.
  static RngStream keyed(std::initializer_list<std::uint64_t> parts) noexcept
  {
    std::uint64_t k = 0x6A09E667F3BCC908ULL;
    for (std::uint64_t p : parts) {
      k = mix64(k ^ mix64(p + 0x9E3779B97F4A7C15ULL));
    }
    return RngStream(k);
  }

  /// Independent child stream; does not advance this one.
  RngStream split(std::uint64_t id) const noexcept
  {
    return keyed({key_, id});
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept
  {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal via Box-Muller; draws are produced in pairs.
  double normal() noexcept;

private:
  std::uint64_t key_;
  std::uint64_t counter_{0};
  double spare_{0.0};
  bool has_spare_{false};
};

}  // namespace sswnp

#endif  // SSWNP__RNG_HPP_
