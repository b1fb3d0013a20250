#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace deplabel {

// Deterministic 64-bit mix generator (splitmix64). Every seeded operation in
// the toolkit (subset shuffles, training-order shuffles, synthetic data) goes
// through this class so that results are reproducible from the seed alone,
// independent of platform and standard library.
//
// State advances by the golden-ratio increment 0x9E3779B97F4A7C15; the output
// is the finalized avalanche mix of the new state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Value in [0, bound). bound must be nonzero. Plain modulo: the bias is
  // irrelevant at treebank scale and keeps the sequence easy to re-derive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// In-place Fisher-Yates: for i = n-1 .. 1, swap items[i] with
// items[rng.below(i + 1)].
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace deplabel
