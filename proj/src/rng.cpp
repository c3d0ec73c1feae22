#include "credrepair/rng.hpp"

#include <algorithm>
#include <cassert>

namespace credrepair {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {
  // Warm up so nearby seeds do not produce correlated leading draws.
  splitmix64(state_);
  splitmix64(state_);
}

RngStream RngStream::substream(std::string_view label) const {
  std::uint64_t mixed = seed_ ^ fnv1a(label);
  std::uint64_t s = mixed;
  return RngStream(splitmix64(s));
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_double() {
  // 53 random bits into [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

std::size_t RngStream::uniform_index(std::size_t n) {
  assert(n > 0);
  std::uint64_t bound = static_cast<std::uint64_t>(n);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

bool RngStream::bernoulli(double p) { return next_double() < p; }

std::vector<std::size_t> RngStream::sample_indices(std::size_t n, std::size_t k) {
  k = std::min(k, n);
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  // Partial Fisher-Yates: first k slots become the sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace credrepair
