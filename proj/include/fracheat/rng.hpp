#pragma once

#include <cstdint>

namespace fracheat::rng {

// Counter-based stream (Philox2x64-10). The block index is the counter low word
// and the stream id the high word, so a (seed, stream_id) pair names one
// reproducible sequence and distinct stream_ids give independent streams
// regardless of how many worker threads consume them.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform01();    // strictly inside (0,1)
  double normal();       // standard normal, Box-Muller (second draw cached)
  double exponential();  // unit exponential

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_, stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int avail_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace fracheat::rng
