#pragma once

// Seeded instance generation. The generator is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; bounded draws use rejection sampling
// here rather than std:: distributions, which differ between libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wgshift/field.hpp"
#include "wgshift/functional_graph.hpp"
#include "wgshift/infinite.hpp"
#include "wgshift/shift.hpp"

namespace wgshift {

/// splitmix64 finaliser, used to derive independent per-instance seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability `rate` (53-bit resolution).
  bool chance(double rate) {
    const auto threshold = static_cast<std::uint64_t>(rate * 9007199254740992.0);
    return (next() >> 11) < threshold;
  }

 private:
  std::mt19937_64 engine_;
};

/// Rational weights are n/d with n in [-8, 8] \ {0}, d in [1, 4]; prime
/// field weights are uniform nonzero residues.
inline FieldElement random_nonzero(Rng& rng, const FieldContext& field) {
  if (field.is_prime_field())
    return field.from_int(rng.between(1, static_cast<long long>(field.modulus()) - 1));
  long long num = rng.between(1, 16);
  num = num <= 8 ? num : 8 - num;
  return field.from_fraction(num, rng.between(1, 4));
}

inline FieldElement random_weight(Rng& rng, const FieldContext& field, double zero_rate) {
  if (rng.chance(zero_rate)) return field.zero();
  return random_nonzero(rng, field);
}

inline FunctionalGraph random_graph(Rng& rng, std::size_t n) {
  std::vector<Node> phi(n);
  for (auto& v : phi) v = rng.below(n);
  return FunctionalGraph(std::move(phi));
}

/// n uniform in [1, max_n], phi uniform, weights zero with `zero_rate`.
inline WeightedShift random_shift(Rng& rng, const FieldContext& field, std::size_t max_n,
                                  double zero_rate) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<long long>(max_n)));
  FunctionalGraph g = random_graph(rng, n);
  std::vector<FieldElement> w;
  w.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_weight(rng, field, zero_rate));
  return WeightedShift(std::move(g), field, std::move(w));
}

/// B uniform in [0, max_boundary], table targets in [0, B + 3]; the tail
/// weight is nonzero unless `zero_tail`.
inline CoFinitePresentation random_presentation(Rng& rng, const FieldContext& field,
                                                std::size_t max_boundary, double zero_rate,
                                                bool zero_tail = false) {
  const auto b = static_cast<std::uint64_t>(rng.between(0, static_cast<long long>(max_boundary)));
  std::vector<std::uint64_t> phi(b);
  std::vector<FieldElement> w;
  for (auto& v : phi) v = rng.below(b + 4);
  for (std::uint64_t i = 0; i < b; ++i) w.push_back(random_weight(rng, field, zero_rate));
  FieldElement tail = zero_tail ? field.zero() : random_nonzero(rng, field);
  return CoFinitePresentation(field, std::move(phi), std::move(w), std::move(tail));
}

}  // namespace wgshift
