#pragma once

// Self-maps of N that act as n -> n+1 from a boundary B on, with a finite
// table below it. These are the only infinite index sets handled here; they
// are enough to reach wandering points, which finite index sets never have.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgshift/error.hpp"
#include "wgshift/field.hpp"
#include "wgshift/functional_graph.hpp"
#include "wgshift/shift.hpp"

namespace wgshift {

class CoFinitePresentation {
 public:
  CoFinitePresentation(FieldContext field, std::vector<std::uint64_t> phi_table,
                       std::vector<FieldElement> weight_table, FieldElement tail_weight)
      : field_(field),
        phi_(std::move(phi_table)),
        weights_(std::move(weight_table)),
        tail_weight_(std::move(tail_weight)) {
    if (phi_.size() != weights_.size())
      throw Error(Errc::length_mismatch, "phi_table and weight_table lengths differ");
    for (const auto& w : weights_) field_.require(w);
    field_.require(tail_weight_);
  }

  const FieldContext& field() const noexcept { return field_; }
  /// B: phi(n) = n + 1 and w_n = tail_weight for all n >= B.
  std::uint64_t boundary() const noexcept { return phi_.size(); }
  const std::vector<std::uint64_t>& phi_table() const noexcept { return phi_; }
  const std::vector<FieldElement>& weight_table() const noexcept { return weights_; }
  const FieldElement& tail_weight() const noexcept { return tail_weight_; }

  std::uint64_t phi(std::uint64_t a) const { return a < phi_.size() ? phi_[a] : a + 1; }
  const FieldElement& weight(std::uint64_t a) const {
    return a < weights_.size() ? weights_[a] : tail_weight_;
  }

  friend bool operator==(const CoFinitePresentation&, const CoFinitePresentation&) = default;

 private:
  FieldContext field_;
  std::vector<std::uint64_t> phi_;
  std::vector<FieldElement> weights_;
  FieldElement tail_weight_;
};

namespace detail {

/// The table collapsed onto {0..B}, with B standing for "escaped into the
/// tail" and fixed by the map.
inline FunctionalGraph escape_graph(const CoFinitePresentation& p) {
  const std::uint64_t b = p.boundary();
  std::vector<Node> phi(b + 1);
  for (std::uint64_t a = 0; a < b; ++a) phi[a] = std::min<std::uint64_t>(p.phi(a), b);
  phi[b] = b;
  return FunctionalGraph(std::move(phi));
}

}  // namespace detail

struct PresentationSummary {
  /// Class of each table node k < B. Every n >= B is wandering.
  std::vector<PointClass> classes;
  /// Always true: the tail consists of wandering points.
  bool has_wandering = true;
  /// Holds iff tail_weight = 0.
  bool wandering_in_down_zero;
  /// Cycles lying inside [0, B), smallest node first.
  std::vector<std::vector<std::uint64_t>> cycles;
};

inline PresentationSummary classify_presentation(const CoFinitePresentation& p) {
  const std::uint64_t b = p.boundary();
  const FunctionalGraph g = detail::escape_graph(p);
  const GraphAnalysis an = analyze(g);
  const std::size_t escaped = an.cycle_id[b];
  PresentationSummary out;
  out.wandering_in_down_zero = p.tail_weight().is_zero();
  for (std::uint64_t a = 0; a < b; ++a) {
    if (an.cycle_id[a] == escaped)
      out.classes.push_back(PointClass::wandering);
    else
      out.classes.push_back(an.classify(a));
  }
  for (std::size_t id = 0; id < an.cycles.size(); ++id) {
    if (id == escaped) continue;
    out.cycles.emplace_back(an.cycles[id].nodes.begin(), an.cycles[id].nodes.end());
  }
  return out;
}

/// Whether phi(N \ Z) misses some point. Only [0, B] can be missed, because
/// the tail covers everything above B exactly when tail_weight != 0, and
/// misses all of it otherwise.
inline bool cofinite_zero_in_spectrum(const CoFinitePresentation& p) {
  if (p.tail_weight().is_zero()) return true;
  const std::uint64_t b = p.boundary();
  std::vector<bool> covered(b + 1, false);
  for (std::uint64_t a = 0; a < b; ++a)
    if (!p.weight(a).is_zero() && p.phi(a) <= b) covered[p.phi(a)] = true;
  return std::find(covered.begin(), covered.end(), false) != covered.end();
}

inline SpectrumDescription infinite_spectrum(const CoFinitePresentation& p) {
  SpectrumDescription out;
  out.includes_zero = cofinite_zero_in_spectrum(p);
  if (!p.tail_weight().is_zero()) {
    out.nonzero_part = AllNonzero{};
    return out;
  }
  // Tail in Z: only cycles of the table that avoid Z contribute.
  const PresentationSummary summary = classify_presentation(p);
  std::vector<WitnessedValue> found;
  for (std::size_t id = 0; id < summary.cycles.size(); ++id) {
    const auto& cycle = summary.cycles[id];
    FieldElement c = p.field().one();
    for (std::uint64_t a : cycle) c *= p.weight(a);
    if (c.is_zero()) continue;
    for (FieldElement& r : nth_roots(p.field(), c, static_cast<long long>(cycle.size()))) {
      auto same = [&](const WitnessedValue& w) { return w.value == r; };
      if (std::none_of(found.begin(), found.end(), same))
        found.push_back({std::move(r), id, cycle.size(), c});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const WitnessedValue& a, const WitnessedValue& b) { return a.value < b.value; });
  out.nonzero_part = std::move(found);
  return out;
}

/// The finite shift on the table nodes whose orbits never leave [0, B),
/// reindexed ascending; nullopt when there are none.
inline std::optional<RestrictedShift> core_shift(const CoFinitePresentation& p) {
  const PresentationSummary summary = classify_presentation(p);
  std::vector<Node> nodes;
  for (std::uint64_t a = 0; a < p.boundary(); ++a)
    if (summary.classes[a] != PointClass::wandering) nodes.push_back(a);
  if (nodes.empty()) return std::nullopt;
  std::vector<Node> local(p.boundary(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
  std::vector<Node> phi;
  std::vector<FieldElement> weights;
  for (Node a : nodes) {
    phi.push_back(local[p.phi(a)]);
    weights.push_back(p.weight(a));
  }
  return RestrictedShift{WeightedShift(FunctionalGraph(std::move(phi)), p.field(), std::move(weights)),
                         std::move(nodes)};
}

/// Coordinates 0..K-1 of an eigenvector of the shift on F^N.
struct WindowVector {
  std::size_t window;
  std::vector<FieldElement> values;
  std::uint64_t anchor;
};

/// Least (p, q), p, q >= 1, with phi^p(a) = phi^q(B), or nullopt when the
/// orbit of a never reaches the tail.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> tail_meet(
    const CoFinitePresentation& p, std::uint64_t a) {
  const std::uint64_t b = p.boundary();
  if (a >= b) return std::pair<std::uint64_t, std::uint64_t>{1, a - b + 1};
  std::uint64_t x = a;
  for (std::uint64_t step = 1; step <= b; ++step) {
    x = p.phi(x);
    if (x >= b) {
      if (x > b) return std::pair{step, x - b};
      return std::pair<std::uint64_t, std::uint64_t>{step + 1, 1};
    }
  }
  return std::nullopt;
}

/// Eigenvector for r != 0 anchored at the wandering point B:
/// x_a = r^(q-p) (w_a ... w_phi^p(a)) (w_B ... w_phi^q(B))^-1 with v = 1.
inline WindowVector wandering_eigenvector_window(const CoFinitePresentation& p,
                                                 const FieldElement& r, std::size_t window) {
  p.field().require(r);
  if (r.is_zero()) throw Error(Errc::zero_eigenvalue_requested, "use the kernel for r = 0");
  if (p.tail_weight().is_zero())
    throw Error(Errc::zero_tail_weight, "the tail lies in the closure of Z");
  if (window <= p.boundary())
    throw Error(Errc::window_too_small, "window " + std::to_string(window) +
                                            " must exceed B = " + std::to_string(p.boundary()));

  const std::uint64_t theta = p.boundary();
  WindowVector out{window, std::vector<FieldElement>(window, p.field().zero()), theta};
  for (std::uint64_t a = 0; a < window; ++a) {
    const auto meet = tail_meet(p, a);
    if (!meet) continue;
    const auto [steps_a, steps_theta] = *meet;
    FieldElement own = p.field().one();
    std::uint64_t x = a;
    for (std::uint64_t i = 0; i <= steps_a; ++i, x = p.phi(x)) own *= p.weight(x);
    FieldElement anchor = p.field().one();
    x = theta;
    for (std::uint64_t i = 0; i <= steps_theta; ++i, x = p.phi(x)) anchor *= p.weight(x);
    const long long shift = static_cast<long long>(steps_theta) - static_cast<long long>(steps_a);
    out.values[a] = pow(r, shift) * own / anchor;
  }
  return out;
}

/// w_a x_phi(a) = r x_a for every a < K with phi(a) < K, and x != 0.
inline bool window_verify(const CoFinitePresentation& p, const FieldElement& r,
                          const WindowVector& x) {
  if (!p.field().contains(r) || x.values.size() != x.window) return false;
  bool nonzero = false;
  for (std::uint64_t a = 0; a < x.window; ++a) {
    if (!p.field().contains(x.values[a])) return false;
    nonzero = nonzero || !x.values[a].is_zero();
    const std::uint64_t next = p.phi(a);
    if (next >= x.window) continue;
    if (p.weight(a) * x.values[next] != r * x.values[a]) return false;
  }
  return nonzero;
}

/// Coordinates a < K where the eigen-relation fails, for diagnostics.
inline std::vector<std::uint64_t> window_residuals(const CoFinitePresentation& p,
                                                   const FieldElement& r, const WindowVector& x) {
  std::vector<std::uint64_t> bad;
  for (std::uint64_t a = 0; a < x.window && a < x.values.size(); ++a) {
    const std::uint64_t next = p.phi(a);
    if (next >= x.window) continue;
    if (p.weight(a) * x.values[next] != r * x.values[a]) bad.push_back(a);
  }
  return bad;
}

/// An eigenvector window for any eigenvalue r: the kernel vector for 0, the
/// wandering construction when the tail weight is nonzero, otherwise the
/// periodic construction on the core, extended by zero.
inline WindowVector eigenvector_window(const CoFinitePresentation& p, const FieldElement& r,
                                       std::size_t window) {
  p.field().require(r);
  if (window <= p.boundary())
    throw Error(Errc::window_too_small, "window " + std::to_string(window) +
                                            " must exceed B = " + std::to_string(p.boundary()));
  if (!infinite_spectrum(p).contains(r))
    throw Error(Errc::not_an_eigenvalue, r.to_string() + " is not an eigenvalue");

  WindowVector out{window, std::vector<FieldElement>(window, p.field().zero()), 0};
  if (r.is_zero()) {
    // Smallest point missed by phi(N \ Z). B table entries cannot cover the
    // B + 1 points 0..B, so it is at most B.
    std::vector<bool> covered(p.boundary() + 1, false);
    for (std::uint64_t a = 0; a < p.boundary(); ++a)
      if (!p.weight(a).is_zero() && p.phi(a) <= p.boundary()) covered[p.phi(a)] = true;
    const auto missed = static_cast<std::uint64_t>(
        std::find(covered.begin(), covered.end(), false) - covered.begin());
    out.anchor = missed;
    out.values[missed] = p.field().one();
  } else if (!p.tail_weight().is_zero()) {
    out = wandering_eigenvector_window(p, r, window);
  } else {
    const auto core = core_shift(p);
    const EigenPair pair = eigenvector(core->shift, r);
    out.anchor = core->nodes[pair.anchor];
    for (const auto& [a, value] : pair.vector) out.values[core->nodes[a]] = value;
  }
  if (!window_verify(p, r, out))
    throw Error(Errc::internal_verification_failure,
                "window vector for " + r.to_string() + " fails the eigen-relation");
  return out;
}

}  // namespace wgshift
