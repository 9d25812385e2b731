// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_RNG_HPP
#define CBRW_RNG_HPP

#include <array>
#include <cstdint>

namespace cbrw {

// SplitMix64 finalizer; used to derive purpose-specific master seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Philox4x32-10 counter-based generator. A stream is addressed by
// (seed, stream): the seed is the 64-bit key, the stream id occupies the
// upper half of the 128-bit counter, and blocks advance the lower half.
// Streams are statistically independent, so replication `i` can simply use
// stream `i` and the results do not depend on how replications are
// distributed over worker threads.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept;
  // Uniform on (0,1]; safe to pass to log().
  double uniform_pos() noexcept;
  // Standard normal via Box-Muller (second value cached).
  double normal() noexcept;
  // Uniform integer in [0, bound); bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // next unread word in buf_
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace cbrw

#endif
