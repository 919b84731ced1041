#include "fracheat/rng.hpp"

#include <cmath>

namespace fracheat::rng {

namespace {

constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline void philox2x64(std::uint64_t key, std::uint64_t c0, std::uint64_t c1,
                       std::uint64_t& r0, std::uint64_t& r1) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi, lo;
    mulhilo(kPhiloxM, c0, hi, lo);
    c0 = hi ^ key ^ c1;
    c1 = lo;
    key += kWeyl;
  }
  r0 = c0;
  r1 = c1;
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void Stream::refill() {
  philox2x64(seed_, stream_id_, block_, buf_[0], buf_[1]);
  ++block_;
  avail_ = 2;
}

std::uint64_t Stream::next_u64() {
  if (avail_ == 0) refill();
  return buf_[2 - avail_--];
}

double Stream::uniform01() {
  // top 53 bits, centered so the result is never 0 or 1
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double Stream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.28318530717958647693 * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

double Stream::exponential() { return -std::log(uniform01()); }

}  // namespace fracheat::rng
