#include "diagcx/hyperplane.hpp"

#include <algorithm>
#include <set>

namespace diagcx {

Hyperplane::Hyperplane(Vertex min) : min_(std::move(min)) {
  if (min_.picture().maximal().size() != 1)
    fail(ErrorCode::kPrecondition, "a minimal vertex has exactly one maximal transistor");
}

std::optional<std::string> Hyperplane::address() const {
  const Picture& p = min_.picture();
  if (!is_positive_tree(p)) return std::nullopt;
  return tree_addresses(p).at(p.maximal().at(0));
}

std::string Hyperplane::label() const {
  auto a = address();
  if (!a) return key();
  return "@" + (a->empty() ? std::string("ε") : *a);
}

Hyperplane min_vertex(const Vertex& v, int t) {
  const Picture& p = v.picture();
  if (t < 0 || t >= p.size()) fail(ErrorCode::kPrecondition, "unknown transistor id");
  std::vector<bool> keep(p.size(), false);
  for (int u : p.downset(t)) keep[u] = true;
  return Hyperplane(vertex_of(restrict_to(p, keep).picture));
}

std::vector<Hyperplane> hyperplanes_below(const Vertex& v) {
  std::vector<Hyperplane> r;
  r.reserve(v.size());
  for (int t = 0; t < v.size(); ++t) r.push_back(min_vertex(v, t));
  return r;
}

bool separates(const Hyperplane& h, const Vertex& v) { return vertex_leq(h.min(), v); }

bool halfspace_leq(const Hyperplane& h1, const Hyperplane& h2) {
  return vertex_leq(h1.min(), h2.min());
}

bool halfspaces_intersect(const Hyperplane& h1, const Hyperplane& h2) {
  return lub(h1.min(), h2.min()).has_value();
}

int edge_distance(const Vertex& v1, const Vertex& v2) {
  std::set<std::string> a, b;
  for (const auto& h : hyperplanes_below(v1)) a.insert(h.key());
  for (const auto& h : hyperplanes_below(v2)) b.insert(h.key());
  if (v1.variant() != v2.variant() || v1.word() != v2.word())
    fail(ErrorCode::kMismatch, "vertices live in different complexes");
  std::vector<std::string> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return static_cast<int>(diff.size());
}

}  // namespace diagcx
