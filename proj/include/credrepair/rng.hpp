#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace credrepair {

// Deterministic splitmix64 stream. Every source of randomness in the
// pipeline is an RngStream derived from the single run seed via labeled
// substreams, so individual components stay reproducible in isolation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Independent stream keyed by (this stream's seed, label).
  RngStream substream(std::string_view label) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_double();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n). n must be > 0. Rejection sampled, no
  // modulo bias.
  std::size_t uniform_index(std::size_t n);

  bool bernoulli(double p);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), returned in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace credrepair
