#include "kclust/rng.hpp"

#include <cmath>
#include <numbers>

namespace kclust {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  // xoshiro256++ seeded through splitmix64, per the generator authors.
  std::uint64_t s = seed;
  for (auto& word : state_) word = splitmix64(s);
}

RandomStream RandomStream::keyed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= tag * 0xA24BAED4963EE407ULL;
  h ^= splitmix64(s);
  s ^= index * 0x9FB21C651E98DF25ULL;
  h ^= splitmix64(s);
  return RandomStream(h);
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  // 53 random bits, offset by half an ulp so 0 and 1 are never returned.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Vec RandomStream::gaussian_vector(int dim) {
  Vec v(static_cast<std::size_t>(dim));
  for (double& x : v) x = gaussian();
  return v;
}

Vec RandomStream::unit_vector(int dim) {
  for (;;) {
    Vec v = gaussian_vector(dim);
    if (normalize(v) > 1e-8) return v;
  }
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

}  // namespace kclust
