#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace seqelim {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Counter-based random stream keyed by (master_seed, stream_id).
//
// The master seed is the Philox key and the stream id fills the upper half of
// the 128-bit counter, so any stream can be constructed directly without
// replaying others. Each replication of an experiment owns one stream; a
// stream must not be shared between threads.
//
// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (used_ == 2) refill();
    const auto lo = static_cast<std::uint64_t>(buffer_[2 * used_]);
    const auto hi = static_cast<std::uint64_t>(buffer_[2 * used_ + 1]);
    ++used_;
    ++draws_;
    return (hi << 32) | lo;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  // Number of 64-bit words handed out so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  void refill() noexcept;

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t draws_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 2;
};

// Streams for replication i are RngStream(master_seed, first_stream + i).
struct StreamFamily {
  std::uint64_t master_seed = 0;
  std::uint64_t first_stream = 0;

  RngStream stream(std::uint64_t index) const noexcept {
    return RngStream(master_seed, first_stream + index);
  }
};

}  // namespace seqelim
