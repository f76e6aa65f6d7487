#include <algorithm>
#include <set>

#include "diagcx/hyperplane.hpp"
#include "diagcx/oracles.hpp"
#include "doctest.h"

using namespace diagcx;

namespace {

auto X() { return Presentation::thompson(); }

Vertex tree(const char* bracket, Variant v = Variant::kPlanar) {
  return vertex_of(parse_tree(bracket, v));
}

}  // namespace

TEST_CASE("labels of tree hyperplanes") {
  std::set<std::string> labels;
  for (const auto& h : hyperplanes_below(tree("((. .) (. .))"))) labels.insert(h.label());
  CHECK(labels == std::set<std::string>{"@ε", "@0", "@1"});
  Hyperplane h(tree("(. (. (. .)))"));
  CHECK(h.label() == "@11");
  CHECK(h.address() == std::optional<std::string>("11"));
  CHECK_THROWS_AS(Hyperplane(tree("((. .) (. .))")), Error);
  CHECK_THROWS_AS(Hyperplane(base_vertex(X(), "x", Variant::kPlanar)), Error);
}

TEST_CASE("separation agrees with square classes") {
  for (auto [var, r] : {std::pair{Variant::kPlanar, 4}, {Variant::kBraided, 3}}) {
    BallGraph g = ball(X(), "x", r, var);
    int count = 0;
    auto cls = oracle::square_classes(g, &count);
    std::set<std::string> keys;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto [a, b] = g.edges[e];
      const Vertex& hi = g.depth[a] > g.depth[b] ? g.vertices[a] : g.vertices[b];
      const Vertex& lo = g.depth[a] > g.depth[b] ? g.vertices[b] : g.vertices[a];
      // the hyperplane crossed by this edge is the one below hi but not lo
      std::set<std::string> below_hi, below_lo;
      for (const auto& h : hyperplanes_below(hi)) below_hi.insert(h.key());
      for (const auto& h : hyperplanes_below(lo)) below_lo.insert(h.key());
      std::vector<std::string> diff;
      std::set_difference(below_hi.begin(), below_hi.end(), below_lo.begin(), below_lo.end(),
                          std::back_inserter(diff));
      REQUIRE(diff.size() == 1);
      keys.insert(diff[0]);
      auto cut = oracle::cut_off_by_class(g, cls, cls[e]);
      for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        bool sep = false;
        for (const auto& h : hyperplanes_below(g.vertices[v])) sep |= h.key() == diff[0];
        CHECK(sep == cut[v]);
      }
    }
    CHECK(static_cast<int>(keys.size()) == count);
  }
}

TEST_CASE("half-space order is a partial order and implies intersection") {
  std::vector<Hyperplane> hs;
  std::set<std::string> seen;
  for (const Vertex& v : ball(X(), "x", 3, Variant::kCyclic).vertices)
    for (const auto& h : hyperplanes_below(v))
      if (seen.insert(h.key()).second) hs.push_back(h);
  for (const auto& a : hs) {
    CHECK(halfspace_leq(a, a));
    CHECK(halfspaces_intersect(a, a));
    for (const auto& b : hs) {
      if (halfspace_leq(a, b)) CHECK(halfspaces_intersect(a, b));
      if (halfspace_leq(a, b) && halfspace_leq(b, a)) CHECK(a == b);
      CHECK(halfspaces_intersect(a, b) == halfspaces_intersect(b, a));
      for (const auto& c : hs)
        if (halfspace_leq(a, b) && halfspace_leq(b, c)) CHECK(halfspace_leq(a, c));
    }
  }
}

TEST_CASE("edge distance is a metric on a ball") {
  BallGraph g = ball(X(), "x", 3, Variant::kCyclic);
  auto dist = oracle::bfs_distances(g);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = 0; j < g.vertices.size(); ++j) {
      int d = edge_distance(g.vertices[i], g.vertices[j]);
      CHECK(d == dist[i][j]);
      CHECK(d == edge_distance(g.vertices[j], g.vertices[i]));
    }
  CHECK_THROWS_AS(edge_distance(tree("(. .)"), tree("(. .)", Variant::kCyclic)), Error);
}

TEST_CASE("grid trees are two apart from the base vertex's neighbours") {
  Vertex a = tree("((. .) (. .))"), b = tree("(((. .) .) .)");
  CHECK(edge_distance(a, b) == 2);  // {@1} versus {@00}
  Hyperplane h1(tree("(. (. .))"));
  CHECK(separates(h1, a));
  CHECK_FALSE(separates(h1, b));
}
