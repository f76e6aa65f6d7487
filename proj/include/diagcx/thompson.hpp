#pragma once

// Elements of F, T and V as (x,x)-pictures over <x | x = xx>, grid trees,
// and the action on vertices by stacking and reducing.

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "diagcx/complex.hpp"

namespace diagcx {

/// Reduced (x,x)-picture. F elements are planar, T cyclic, V braided.
struct GroupElement {
  Picture picture;
  Variant variant() const { return picture.variant(); }
  int size() const { return picture.size(); }
};

/// Trees are given by caret addresses; leaves are numbered left to right.
/// Range leaf i is wired to domain leaf perm[i].
struct TreePair {
  std::vector<std::string> domain;
  std::vector<std::string> range;
  std::vector<int> perm;
};

std::string tree_bracket_of(const std::vector<std::string>& carets);
/// Leaf addresses of the tree with these carets, left to right.
std::vector<std::string> tree_leaves(const std::vector<std::string>& carets);
/// Positive tree picture with the given carets (must be downward closed).
Picture tree_picture(const std::vector<std::string>& carets,
                     Variant variant = Variant::kPlanar);
Vertex tree_vertex(const std::vector<std::string>& carets,
                   Variant variant = Variant::kPlanar);
/// Sorted caret addresses of a tree vertex.
std::vector<std::string> carets(const Vertex& v);

/// Range tree atop the leaf wiring atop the inverted domain tree.
Picture tree_pair_picture(const TreePair& tp, Variant variant);

GroupElement element_of(const Picture& p);
GroupElement identity_element(Variant variant = Variant::kPlanar);
GroupElement f_generator(int i);
GroupElement t_rotation(int k);
GroupElement v_element(const TreePair& tp);

/// g·h: g stacked on top of h, then reduced. Variants join.
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement power(const GroupElement& g, int n);
bool is_identity(const GroupElement& g);
bool same_element(const GroupElement& g, const GroupElement& h);

/// Tree-pair product computed on caret addresses (common refinement, then
/// removal of exposed caret pairs); independent of the picture calculus.
TreePair compose_tree_pairs(const TreePair& g, const TreePair& h);
TreePair reduce_tree_pair(const TreePair& tp);

/// Carets {ε} ∪ {0^i : i ≤ m} ∪ {1^j : j ≤ n}.
Vertex grid_tree(int m, int n);
/// grid_tree(m, n) plus a caret at 10.
Vertex grid_tree_hat(int m, int n);
/// All carets of depth < m.
Vertex full_tree(int m, Variant variant = Variant::kPlanar);
std::vector<std::string> grid_carets(int m, int n);
std::vector<std::string> full_carets(int m);

inline constexpr int kMaxTreeDepth = 16;

/// g · v: stack g on the canonical lift of v, reduce, cut the bottom.
Vertex act(const GroupElement& g, const Vertex& v);

/// Words such as "x0 x1^-1 pi2^3 [x0 x1^-1, x0^-1 x1 x0]", applied left to
/// right as stacked from the top.
GroupElement parse_element(std::string_view word);
bool check_relation(std::string_view word);

/// No 2-cube near grid_tree(m, n) has both T_{m,n-1} and T_{m,n+1} as
/// corners, nor both T_{m-1,n} and T_{m+1,n}.
bool link_condition_check(int m, int n);

TreePair random_tree_pair(std::mt19937_64& rng, int leaves, Variant variant);
GroupElement random_element(std::mt19937_64& rng, int max_leaves, Variant variant);

}  // namespace diagcx
