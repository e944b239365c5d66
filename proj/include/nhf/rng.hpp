#ifndef NHF_RNG_HPP
#define NHF_RNG_HPP

#include <cstdint>
#include <string_view>

#include "nhf/types.hpp"

namespace nhf {

/// Counter-based generator built on the SplitMix64 finalizer: draw k of a
/// stream with key K is finalize(K + k * 0x9E3779B97F4A7C15). Streams are
/// keyed by (seed, label, index) so trials reproduce identically in any
/// execution order and across implementations.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  static uint64_t finalize(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// FNV-1a 64-bit.
  static uint64_t hash_label(std::string_view label) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return h;
  }

  static CounterRng keyed(uint64_t seed, std::string_view label, uint64_t index) {
    uint64_t k = finalize(seed + 0x9E3779B97F4A7C15ULL);
    k = finalize(k ^ hash_label(label));
    k = finalize(k ^ index);
    return CounterRng(k);
  }

  uint64_t next_u64() { return finalize(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

  /// Standard real Gaussian (Box-Muller, no cached spare).
  double next_gaussian() {
    double u1 = next_double();
    const double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Standard complex Gaussian: unit variance overall.
  Cx next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return Cx(re, im) / std::sqrt(2.0);
  }

  Vector next_vector(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = next_complex_gaussian();
    return v;
  }

  Matrix next_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = next_complex_gaussian();
    return m;
  }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace nhf

#endif
