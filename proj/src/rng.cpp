#include "arw/rng.hpp"

#include <cmath>
#include <numbers>

namespace arw {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
}

double CounterStream::uniform(std::uint64_t k) const {
  std::uint64_t bits = splitmix64(key_ ^ splitmix64(k));
  // 53 random bits, shifted off zero.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> CounterStream::normal_pair(std::uint64_t k) const {
  double u1 = uniform(2 * k);
  double u2 = uniform(2 * k + 1);
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace arw
