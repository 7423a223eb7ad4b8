#pragma once

#include <cstdint>
#include <utility>

namespace arw {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for sample `index` of a run keyed by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Counter-based stream: draw k depends only on (key, k), so results do not
// depend on how work is split between threads.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  // Uniform on the open interval (0, 1).
  double uniform(std::uint64_t k) const;
  // Two independent standard normals from draws 2k and 2k+1 (Box-Muller).
  std::pair<double, double> normal_pair(std::uint64_t k) const;

 private:
  std::uint64_t key_;
};

}  // namespace arw
