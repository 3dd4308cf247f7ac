#pragma once

// Finite self-maps phi : {0..n-1} -> {0..n-1} and their orbit structure.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgshift/error.hpp"
#include "wgshift/node_set.hpp"

namespace wgshift {

class FunctionalGraph {
 public:
  explicit FunctionalGraph(std::vector<Node> phi) : phi_(std::move(phi)) {
    if (phi_.empty()) throw Error(Errc::invalid_argument, "a functional graph needs n >= 1");
    for (std::size_t a = 0; a < phi_.size(); ++a)
      if (phi_[a] >= phi_.size())
        throw Error(Errc::invalid_argument, "phi[" + std::to_string(a) + "] = " +
                                                std::to_string(phi_[a]) + " is out of range");
  }

  std::size_t size() const noexcept { return phi_.size(); }
  Node operator()(Node a) const { return phi_[a]; }
  const std::vector<Node>& table() const noexcept { return phi_; }

  /// phi^k(a).
  Node iterate(Node a, std::size_t k) const {
    for (; k != 0; --k) a = phi_[a];
    return a;
  }

  friend bool operator==(const FunctionalGraph&, const FunctionalGraph&) = default;

 private:
  std::vector<Node> phi_;
};

/// Point classes of a self-map. Finite analysis never reports `wandering`;
/// the cofinite presentations do.
enum class PointClass { wandering, quasi_periodic, periodic };

struct Cycle {
  /// Orbit order, starting at the smallest node of the cycle.
  std::vector<Node> nodes;
  std::size_t length() const noexcept { return nodes.size(); }
};

struct GraphAnalysis {
  std::vector<bool> on_cycle;
  /// Cycle length for cyclic nodes, 0 elsewhere.
  std::vector<std::size_t> period;
  /// The cycle each orbit ends in. Equals component_id on finite graphs.
  std::vector<std::size_t> cycle_id;
  std::vector<std::size_t> component_id;
  /// Position within its cycle for cyclic nodes, 0 elsewhere.
  std::vector<std::size_t> cycle_pos;
  /// Least s >= 0 with phi^s(a) on a cycle.
  std::vector<std::size_t> tail_len;
  /// Indexed by cycle id; ids follow the smallest node of each component.
  std::vector<Cycle> cycles;

  std::size_t component_count() const noexcept { return cycles.size(); }

  PointClass classify(Node a) const {
    return on_cycle[a] ? PointClass::periodic : PointClass::quasi_periodic;
  }

  NodeSet component(std::size_t id) const {
    NodeSet s(component_id.size());
    for (Node a = 0; a < component_id.size(); ++a)
      if (component_id[a] == id) s.insert(a);
    return s;
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

}  // namespace detail

inline GraphAnalysis analyze(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  GraphAnalysis out;
  out.on_cycle.assign(n, false);
  out.period.assign(n, 0);
  out.cycle_pos.assign(n, 0);
  out.tail_len.assign(n, 0);

  // Components first so that ids are canonical (ordered by smallest member).
  detail::DisjointSets sets(n);
  for (Node a = 0; a < n; ++a) sets.unite(a, g(a));
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> root_label(n, unset);
  out.component_id.assign(n, 0);
  std::size_t components = 0;
  for (Node a = 0; a < n; ++a) {
    std::size_t& label = root_label[sets.find(a)];
    if (label == unset) label = components++;
    out.component_id[a] = label;
  }
  out.cycles.resize(components);

  // Three-colour walk: white = 0, on the current path = 1, finished = 2.
  std::vector<unsigned char> colour(n, 0);
  std::vector<Node> path;
  for (Node start = 0; start < n; ++start) {
    if (colour[start] != 0) continue;
    path.clear();
    Node a = start;
    while (colour[a] == 0) {
      colour[a] = 1;
      path.push_back(a);
      a = g(a);
    }
    std::size_t tail_end = path.size();
    if (colour[a] == 1) {
      // New cycle: the suffix of the path starting at a.
      std::size_t first = 0;
      while (path[first] != a) ++first;
      tail_end = first;
      std::vector<Node> nodes(path.begin() + static_cast<std::ptrdiff_t>(first), path.end());
      std::size_t smallest = 0;
      for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i] < nodes[smallest]) smallest = i;
      std::rotate(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(smallest), nodes.end());
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        out.on_cycle[nodes[i]] = true;
        out.period[nodes[i]] = nodes.size();
        out.cycle_pos[nodes[i]] = i;
        out.tail_len[nodes[i]] = 0;
      }
      out.cycles[out.component_id[nodes.front()]].nodes = std::move(nodes);
    }
    for (std::size_t i = tail_end; i-- > 0;) out.tail_len[path[i]] = out.tail_len[g(path[i])] + 1;
    for (Node b : path) colour[b] = 2;
  }

  out.cycle_id = out.component_id;
  for (const Cycle& c : out.cycles)
    if (c.nodes.empty())
      throw Error(Errc::internal_verification_failure, "component without a cycle");
  return out;
}

/// All a with phi^k(a) in Z for some k >= 0.
inline NodeSet down_closure(const FunctionalGraph& g, const NodeSet& zero_set) {
  const std::size_t n = g.size();
  // 0 unknown, 1 walking, 2 inside, 3 outside
  std::vector<unsigned char> state(n, 0);
  std::vector<Node> path;
  for (Node start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    path.clear();
    Node a = start;
    while (state[a] == 0 && !zero_set.contains(a)) {
      state[a] = 1;
      path.push_back(a);
      a = g(a);
    }
    unsigned char verdict;
    if (zero_set.contains(a))
      verdict = 2;
    else if (state[a] == 1)
      verdict = 3;  // closed a cycle that avoids Z
    else
      verdict = state[a];
    for (Node b : path) state[b] = verdict;
  }
  NodeSet out(n);
  for (Node a = 0; a < n; ++a)
    if (zero_set.contains(a) || state[a] == 2) out.insert(a);
  return out;
}

/// phi(S).
inline NodeSet image(const FunctionalGraph& g, const NodeSet& s) {
  NodeSet out(g.size());
  for (Node a : s.members()) out.insert(g(a));
  return out;
}

/// Lexicographically least (p, q), p, q >= 1, with phi^p(a) = phi^q(b).
inline std::optional<std::pair<std::size_t, std::size_t>> orbit_meet(const FunctionalGraph& g,
                                                                      Node a, Node b) {
  const std::size_t n = g.size();
  // After n steps every orbit is on its cycle, so 2n steps visit every
  // point either orbit can reach.
  const std::size_t horizon = 2 * n;
  constexpr std::size_t unseen = 0;
  std::vector<std::size_t> first_q(n, unseen);
  Node y = b;
  for (std::size_t q = 1; q <= horizon; ++q) {
    y = g(y);
    if (first_q[y] == unseen) first_q[y] = q;
  }
  Node x = a;
  for (std::size_t p = 1; p <= horizon; ++p) {
    x = g(x);
    if (first_q[x] != unseen) return std::pair{p, first_q[x]};
  }
  return std::nullopt;
}

}  // namespace wgshift
