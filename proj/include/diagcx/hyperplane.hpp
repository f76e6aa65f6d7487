#pragma once

// Hyperplanes of the diagram complex, each named by its minimal vertex: the
// downset of a single transistor.

#include <optional>
#include <string>
#include <vector>

#include "diagcx/complex.hpp"

namespace diagcx {

class Hyperplane {
 public:
  /// `min` must have exactly one maximal transistor.
  explicit Hyperplane(Vertex min);

  const Vertex& min() const { return min_; }
  const std::string& key() const { return min_.key(); }
  /// `@<address>` for trees over <x | x = xx> (`@ε` for the root), else the key.
  std::string label() const;
  /// Binary address of the top caret, for tree hyperplanes.
  std::optional<std::string> address() const;

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
    return a.key() < b.key();
  }

 private:
  Vertex min_;
};

/// The hyperplane dual to transistor t of v: min vertex = downset of t.
Hyperplane min_vertex(const Vertex& v, int t);

/// One hyperplane per transistor of v, in v's transistor numbering.
std::vector<Hyperplane> hyperplanes_below(const Vertex& v);

/// Whether h separates v from the base vertex.
bool separates(const Hyperplane& h, const Vertex& v);
bool halfspace_leq(const Hyperplane& h1, const Hyperplane& h2);
bool halfspaces_intersect(const Hyperplane& h1, const Hyperplane& h2);

/// Number of hyperplanes separating v1 from v2.
int edge_distance(const Vertex& v1, const Vertex& v2);

}  // namespace diagcx
