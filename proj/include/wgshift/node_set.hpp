#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wgshift/error.hpp"

namespace wgshift {

using Node = std::size_t;

/// Dense bitset over the nodes {0, ..., n-1}.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe, false) {}
  NodeSet(std::size_t universe, std::initializer_list<Node> members) : bits_(universe, false) {
    for (Node a : members) insert(a);
  }

  static NodeSet all(std::size_t universe) {
    NodeSet s(universe);
    s.bits_.assign(universe, true);
    return s;
  }

  std::size_t universe() const noexcept { return bits_.size(); }

  bool contains(Node a) const { return a < bits_.size() && bits_[a]; }

  void insert(Node a) {
    if (a >= bits_.size()) throw Error(Errc::invalid_argument, "node outside the universe");
    bits_[a] = true;
  }

  void erase(Node a) {
    if (a < bits_.size()) bits_[a] = false;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (bool b : bits_) c += b ? 1 : 0;
    return c;
  }

  bool empty() const noexcept { return count() == 0; }
  bool full() const noexcept { return count() == bits_.size(); }

  NodeSet complement() const {
    NodeSet out(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
    return out;
  }

  bool is_subset_of(const NodeSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.contains(i)) return false;
    return true;
  }

  /// Members in ascending order.
  std::vector<Node> members() const {
    std::vector<Node> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<bool> bits_;
};

}  // namespace wgshift
