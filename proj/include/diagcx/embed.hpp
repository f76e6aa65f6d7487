#pragma once

// The l2 embedding of the complex: a point goes to the vector of its
// hyperplane coefficients. Labelled trees are the points of cubes spanned by
// tree vertices, addressed by binary strings ("" is the root caret).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagcx/complex.hpp"
#include "diagcx/hyperplane.hpp"

namespace diagcx {

/// Hyperplane label -> coefficient in (0,1]; absent means 0. Labels are
/// unique within one variant.
struct SparseVector {
  std::map<std::string, double> entries;
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

SparseVector rho_vertex(const Vertex& v);
/// coords[i] is the coefficient of c.white()[i]; shaded transistors get 1.
SparseVector rho_cube_point(const Cube& c, const std::vector<double>& coords);
double l2_distance_squared(const SparseVector& a, const SparseVector& b);
double l2_distance(const SparseVector& a, const SparseVector& b);
/// Sorted "(key, coeff)" list.
std::string format_vector(const SparseVector& v);

/// Caret address -> coefficient. Support is downward closed, every caret
/// with a child carries 1, maximal carets carry anything in (0,1].
struct LabelledTree {
  std::map<std::string, double> coeffs;
  bool empty() const { return coeffs.empty(); }
  friend bool operator==(const LabelledTree&, const LabelledTree&) = default;
};

void validate_tree(const LabelledTree& t);
LabelledTree all_ones(const std::vector<std::string>& carets);
/// "(. .)" brackets, "." for no caret, "@<coeff>" after maximal carets
/// whose coefficient is not 1.
std::string format_tree(const LabelledTree& t);
LabelledTree parse_labelled_tree(std::string_view text);

SparseVector vector_of_tree(const LabelledTree& t);
LabelledTree tree_of_vector(const SparseVector& v);

LabelledTree subtree_at(const LabelledTree& t, const std::string& bin);
std::pair<LabelledTree, LabelledTree> split(const LabelledTree& t);
LabelledTree wedge(const LabelledTree& a, const LabelledTree& b);

/// (T1, (T2, T3)) -> ((T1, T2), T3). Needs coefficient 1 at "" and "1".
LabelledTree x0_action_tree(const LabelledTree& t);
double tree_distance_squared(const LabelledTree& a, const LabelledTree& b);
/// ||T - x0 T||^2.
double displacement_squared(const LabelledTree& t);

struct Decomposition {
  double a = 0, b = 0, c = 0, total = 0;
};
/// ||T1 - T1^T2||^2, ||T2 - left(T3)||^2, ||T3 - right(T3)||^2 and their
/// sum, for all-ones T with carets at 10 and 11.
Decomposition displacement_decomposition(const LabelledTree& t);

struct SearchResult {
  LabelledTree tree;
  double displacement_squared = 0;
};

/// Least displacement over all-ones grid_tree(m, m) with an optional caret
/// labelled k/8 under each of its leaves; exhaustive for m <= 2, a seeded
/// beam search beyond. NONE if the best found exceeds `bound`.
std::optional<SearchResult> search_low_displacement(int m, double bound);

}  // namespace diagcx
