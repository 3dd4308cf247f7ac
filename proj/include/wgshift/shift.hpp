#pragma once

// Weighted generalized shifts (x_a) -> (w_a x_phi(a)) on F^n, their
// eigenvalues in closed form, and explicit eigenvectors.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wgshift/error.hpp"
#include "wgshift/field.hpp"
#include "wgshift/functional_graph.hpp"
#include "wgshift/node_set.hpp"

namespace wgshift {

using DenseVector = std::vector<FieldElement>;
using SparseVector = std::map<Node, FieldElement>;

class WeightedShift {
 public:
  WeightedShift(FunctionalGraph graph, FieldContext field, std::vector<FieldElement> weights)
      : graph_(std::move(graph)), field_(field), weights_(std::move(weights)) {
    if (weights_.size() != graph_.size())
      throw Error(Errc::length_mismatch, "expected " + std::to_string(graph_.size()) +
                                             " weights, got " + std::to_string(weights_.size()));
    zero_set_ = NodeSet(graph_.size());
    for (Node a = 0; a < weights_.size(); ++a) {
      field_.require(weights_[a]);
      if (weights_[a].is_zero()) zero_set_.insert(a);
    }
    down_zero_ = down_closure(graph_, zero_set_);
    analysis_ = analyze(graph_);
  }

  std::size_t size() const noexcept { return graph_.size(); }
  const FunctionalGraph& graph() const noexcept { return graph_; }
  const FieldContext& field() const noexcept { return field_; }
  const std::vector<FieldElement>& weights() const noexcept { return weights_; }
  const FieldElement& weight(Node a) const { return weights_[a]; }
  /// Z.
  const NodeSet& zero_set() const noexcept { return zero_set_; }
  /// The set of points whose forward orbit meets Z.
  const NodeSet& down_zero() const noexcept { return down_zero_; }
  const GraphAnalysis& analysis() const noexcept { return analysis_; }

  /// Product of the weights around a cycle.
  FieldElement cycle_product(std::size_t cycle) const {
    FieldElement c = field_.one();
    for (Node a : analysis_.cycles.at(cycle).nodes) c *= weights_[a];
    return c;
  }

  /// w_a w_phi(a) ... w_phi^(len-1)(a).
  FieldElement orbit_product(Node a, std::size_t len) const {
    FieldElement c = field_.one();
    for (std::size_t i = 0; i < len; ++i, a = graph_(a)) c *= weights_[a];
    return c;
  }

 private:
  FunctionalGraph graph_;
  FieldContext field_;
  std::vector<FieldElement> weights_;
  NodeSet zero_set_;
  NodeSet down_zero_;
  GraphAnalysis analysis_;
};

/// Which case of the eigenvalue classification produced a spectrum.
enum class SpectrumBranch {
  wandering_onto,        // F \ {0}
  wandering_not_onto,    // F
  periodic_onto,         // M
  periodic_not_onto,     // M u {0}
};

inline std::string_view branch_label(SpectrumBranch b) noexcept {
  switch (b) {
    case SpectrumBranch::wandering_onto: return "W⊄↓Z, Γ=φ(Γ∖Z)";
    case SpectrumBranch::wandering_not_onto: return "W⊄↓Z, Γ≠φ(Γ∖Z)";
    case SpectrumBranch::periodic_onto: return "W⊆↓Z, Γ=φ(Γ∖Z)";
    case SpectrumBranch::periodic_not_onto: return "W⊆↓Z, Γ≠φ(Γ∖Z)";
  }
  return "";
}

/// An explicit nonzero eigenvalue r together with the cycle certifying
/// r^period = cycle_product.
struct WitnessedValue {
  FieldElement value;
  std::size_t cycle_id;
  std::size_t period;
  FieldElement cycle_product;
};

/// Marker for "every nonzero field element is an eigenvalue".
struct AllNonzero {
  friend bool operator==(AllNonzero, AllNonzero) = default;
};

struct SpectrumDescription {
  bool includes_zero = false;
  std::variant<std::vector<WitnessedValue>, AllNonzero> nonzero_part;

  bool all_nonzero() const noexcept { return std::holds_alternative<AllNonzero>(nonzero_part); }

  const std::vector<WitnessedValue>& explicit_values() const& {
    if (auto v = std::get_if<std::vector<WitnessedValue>>(&nonzero_part)) return *v;
    throw Error(Errc::invalid_argument, "spectrum is all of F \\ {0}, not an explicit list");
  }
  // Would dangle in a range-for over a temporary.
  const std::vector<WitnessedValue>& explicit_values() const&& = delete;

  SpectrumBranch branch() const noexcept {
    if (all_nonzero())
      return includes_zero ? SpectrumBranch::wandering_not_onto : SpectrumBranch::wandering_onto;
    return includes_zero ? SpectrumBranch::periodic_not_onto : SpectrumBranch::periodic_onto;
  }

  bool contains(const FieldElement& r) const {
    if (r.is_zero()) return includes_zero;
    if (all_nonzero()) return true;
    for (const auto& w : explicit_values())
      if (w.value == r) return true;
    return false;
  }

  bool empty() const { return !includes_zero && !all_nonzero() && explicit_values().empty(); }

  /// Every eigenvalue in canonical order. Only for explicit spectra.
  std::vector<FieldElement> values(const FieldContext& field) const {
    std::vector<FieldElement> out;
    for (const auto& w : explicit_values()) out.push_back(w.value);
    if (includes_zero) out.push_back(field.zero());
    std::sort(out.begin(), out.end());
    return out;
  }
};

struct EigenPair {
  FieldElement lambda;
  /// Support lies in a single component.
  SparseVector vector;
  std::size_t witness_component;
  /// Node at which the vector is normalised to 1.
  Node anchor;
};

/// (w_a x_phi(a))_a.
inline DenseVector apply(const WeightedShift& shift, const DenseVector& x) {
  if (x.size() != shift.size())
    throw Error(Errc::length_mismatch, "vector length " + std::to_string(x.size()) +
                                           " != " + std::to_string(shift.size()));
  DenseVector out;
  out.reserve(x.size());
  for (Node a = 0; a < x.size(); ++a) {
    shift.field().require(x[a]);
    out.push_back(shift.weight(a) * x[shift.graph()(a)]);
  }
  return out;
}

inline DenseVector densify(const WeightedShift& shift, const SparseVector& v) {
  DenseVector out(shift.size(), shift.field().zero());
  for (const auto& [a, value] : v) {
    if (a >= shift.size()) throw Error(Errc::length_mismatch, "sparse entry outside index set");
    out[a] = value;
  }
  return out;
}

/// phi(Gamma \ Z).
inline NodeSet nonzero_image(const WeightedShift& shift) {
  return image(shift.graph(), shift.zero_set().complement());
}

/// Coordinates left free by the kernel: Gamma \ phi(Gamma \ Z).
inline NodeSet kernel_support(const WeightedShift& shift) {
  return nonzero_image(shift).complement();
}

inline bool zero_in_spectrum(const WeightedShift& shift) { return !nonzero_image(shift).full(); }

/// Eigenvalues of a finite weighted shift. Finite index sets have no
/// wandering points, so the nonzero part is the set of r with
/// r^len = (weight product) over the cycles that avoid Z.
inline SpectrumDescription spectrum(const WeightedShift& shift) {
  const GraphAnalysis& an = shift.analysis();
  std::vector<WitnessedValue> found;
  for (std::size_t id = 0; id < an.cycles.size(); ++id) {
    const Cycle& cycle = an.cycles[id];
    if (shift.down_zero().contains(cycle.nodes.front())) continue;
    const FieldElement c = shift.cycle_product(id);
    for (FieldElement& r : nth_roots(shift.field(), c, static_cast<long long>(cycle.length()))) {
      auto same = [&](const WitnessedValue& w) { return w.value == r; };
      if (std::none_of(found.begin(), found.end(), same))
        found.push_back({std::move(r), id, cycle.length(), c});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const WitnessedValue& a, const WitnessedValue& b) { return a.value < b.value; });
  SpectrumDescription out;
  out.includes_zero = zero_in_spectrum(shift);
  out.nonzero_part = std::move(found);
  return out;
}

inline bool verify_eigenpair(const WeightedShift& shift, const EigenPair& pair);

/// Builds an eigenvector for lambda. For lambda != 0 the vector lives on the
/// component of the witness cycle (or `component_hint`) and equals 1 at the
/// smallest node of that cycle.
inline EigenPair eigenvector(const WeightedShift& shift, const FieldElement& lambda,
                             std::optional<std::size_t> component_hint = std::nullopt) {
  shift.field().require(lambda);
  const GraphAnalysis& an = shift.analysis();
  EigenPair pair{lambda, {}, 0, 0};

  if (lambda.is_zero()) {
    const auto free = kernel_support(shift).members();
    if (free.empty()) throw Error(Errc::not_an_eigenvalue, "0 is not an eigenvalue");
    pair.anchor = free.front();
    pair.witness_component = an.component_id[pair.anchor];
    pair.vector.emplace(pair.anchor, shift.field().one());
  } else {
    auto qualifies = [&](std::size_t id) {
      const Cycle& cycle = an.cycles[id];
      if (shift.down_zero().contains(cycle.nodes.front())) return false;
      return pow(lambda, static_cast<long long>(cycle.length())) == shift.cycle_product(id);
    };
    std::optional<std::size_t> chosen;
    if (component_hint) {
      if (*component_hint >= an.component_count())
        throw Error(Errc::invalid_argument, "component hint out of range");
      if (qualifies(*component_hint)) chosen = component_hint;
    } else {
      for (std::size_t id = 0; id < an.cycles.size() && !chosen; ++id)
        if (qualifies(id)) chosen = id;
    }
    if (!chosen)
      throw Error(Errc::not_an_eigenvalue, lambda.to_string() + " is not an eigenvalue" +
                                               (component_hint ? " on the hinted component" : ""));

    const Cycle& cycle = an.cycles[*chosen];
    const std::size_t period = cycle.length();
    pair.witness_component = *chosen;
    pair.anchor = cycle.nodes.front();
    for (Node a = 0; a < shift.size(); ++a) {
      if (an.component_id[a] != *chosen) continue;
      // Least s >= 1 landing on the cycle, at offset t from the anchor.
      const std::size_t s = std::max<std::size_t>(an.tail_len[a], 1);
      const std::size_t t = an.cycle_pos[shift.graph().iterate(a, s)];
      const std::size_t e = s + period - t;
      pair.vector.emplace(a, pow(lambda, -static_cast<long long>(e)) * shift.orbit_product(a, e));
    }
  }

  if (!verify_eigenpair(shift, pair))
    throw Error(Errc::internal_verification_failure,
                "constructed vector for " + lambda.to_string() + " is not an eigenvector");
  return pair;
}

inline bool verify_eigenpair(const WeightedShift& shift, const EigenPair& pair) {
  if (!shift.field().contains(pair.lambda)) return false;
  const DenseVector y = densify(shift, pair.vector);
  if (std::all_of(y.begin(), y.end(), [](const FieldElement& e) { return e.is_zero(); }))
    return false;
  const DenseVector image = wgshift::apply(shift, y);
  for (Node a = 0; a < y.size(); ++a)
    if (image[a] != pair.lambda * y[a]) return false;
  return true;
}

/// Spectrum of the unweighted shift x -> x o phi, from multiplicative orders:
/// r != 0 is an eigenvalue iff its order divides some cycle length.
inline SpectrumDescription unit_shift_spectrum(const FunctionalGraph& g, const FieldContext& field) {
  const GraphAnalysis an = analyze(g);
  auto cycle_with_multiple = [&](std::uint64_t order) -> std::optional<std::size_t> {
    for (std::size_t id = 0; id < an.cycles.size(); ++id)
      if (an.cycles[id].length() % order == 0) return id;
    return std::nullopt;
  };

  std::vector<WitnessedValue> found;
  auto consider = [&](const FieldElement& r) {
    const auto order = element_order(field, r);
    if (!order) return;
    if (auto id = cycle_with_multiple(*order))
      found.push_back({r, *id, an.cycles[*id].length(), field.one()});
  };
  if (field.is_prime_field()) {
    for (std::uint64_t v = 1; v < field.modulus(); ++v)
      consider(field.from_int(static_cast<long long>(v)));
  } else {
    consider(field.from_int(-1));
    consider(field.one());
  }

  SpectrumDescription out;
  out.includes_zero = !image(g, NodeSet::all(g.size())).full();
  out.nonzero_part = std::move(found);
  return out;
}

/// The shift restricted to one orbit-merge class, reindexed in ascending
/// node order. `nodes[i]` is the original index of new node i.
struct RestrictedShift {
  WeightedShift shift;
  std::vector<Node> nodes;
};

inline RestrictedShift restrict_to_component(const WeightedShift& shift, std::size_t component) {
  const std::vector<Node> nodes = shift.analysis().component(component).members();
  if (nodes.empty()) throw Error(Errc::invalid_argument, "no such component");
  std::vector<Node> local(shift.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = i;
  std::vector<Node> phi;
  std::vector<FieldElement> weights;
  for (Node a : nodes) {
    phi.push_back(local[shift.graph()(a)]);
    weights.push_back(shift.weight(a));
  }
  return {WeightedShift(FunctionalGraph(std::move(phi)), shift.field(), std::move(weights)), nodes};
}

struct CycleSummary {
  std::size_t id;
  std::vector<Node> nodes;
  FieldElement product;
  bool avoids_zero;
};

/// Everything `analyze` prints for a finite instance, in canonical order.
struct SpectrumReport {
  std::string field;
  std::size_t n;
  std::vector<PointClass> classes;
  std::vector<CycleSummary> cycles;
  NodeSet zero_set;
  NodeSet down_zero;
  NodeSet kernel_support;
  bool onto;  // phi(Gamma \ Z) = Gamma
  SpectrumDescription spectrum;
  /// One per eigenvalue, ascending by eigenvalue.
  std::vector<EigenPair> eigenpairs;
};

inline SpectrumReport spectrum_report(const WeightedShift& shift) {
  const GraphAnalysis& an = shift.analysis();
  SpectrumReport rep{shift.field().name(), shift.size(), {}, {}, shift.zero_set(),
                     shift.down_zero(), kernel_support(shift), false, spectrum(shift), {}};
  rep.onto = rep.kernel_support.empty();
  for (Node a = 0; a < shift.size(); ++a) rep.classes.push_back(an.classify(a));
  for (std::size_t id = 0; id < an.cycles.size(); ++id)
    rep.cycles.push_back({id, an.cycles[id].nodes, shift.cycle_product(id),
                          !shift.down_zero().contains(an.cycles[id].nodes.front())});
  for (const FieldElement& r : rep.spectrum.values(shift.field()))
    rep.eigenpairs.push_back(eigenvector(shift, r));
  return rep;
}

}  // namespace wgshift
