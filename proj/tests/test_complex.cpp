#include <algorithm>
#include <random>
#include <set>

#include "diagcx/complex.hpp"
#include "diagcx/hyperplane.hpp"
#include "diagcx/oracles.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace diagcx;

namespace {

auto X() { return Presentation::thompson(); }

Vertex tree(const char* bracket, Variant v = Variant::kPlanar) {
  return vertex_of(parse_tree(bracket, v));
}

// Every reduced picture with at most r transistors, grown by attachments
// rather than by neighbour enumeration.
std::set<std::string> grown_keys(int r, Variant v) {
  std::set<std::string> seen{vertex_key(make_identity(X(), "x", v))};
  std::vector<Picture> layer{make_identity(X(), "x", v)};
  for (int k = 0; k < r; ++k) {
    std::vector<Picture> next;
    for (const Picture& p : layer)
      for (const Attachment& a : attachments(p)) {
        if (attachment_creates_dipole(p, a)) continue;
        auto q = try_attach(p, a);
        if (!q) continue;
        Vertex w = vertex_of(*q);
        if (seen.insert(w.key()).second) next.push_back(w.picture());
      }
    layer = std::move(next);
  }
  return seen;
}

// 4-cycles through vertex i.
int squares_through(const BallGraph& g, int i) {
  auto adj = g.adjacency();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  int count = 0;
  for (std::size_t x = 0; x < adj[i].size(); ++x)
    for (std::size_t y = x + 1; y < adj[i].size(); ++y) {
      int b = adj[i][x], d = adj[i][y];
      for (int c : adj[b])
        if (c != i && std::binary_search(adj[d].begin(), adj[d].end(), c)) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("neighbours of small vertices") {
  Vertex base = base_vertex(X(), "x", Variant::kPlanar);
  CHECK(base.size() == 0);
  auto n0 = neighbors(base);
  REQUIRE(n0.size() == 1);
  CHECK(n0[0] == tree("(. .)"));
  // one caret: drop it, or hang a caret on either leaf; merging its two
  // wires back is a dipole except through the cyclic/braided wrap
  CHECK(neighbors(tree("(. .)")).size() == 3);
  CHECK(neighbors(tree("(. .)", Variant::kCyclic)).size() == 4);
  CHECK(neighbors(tree("(. .)", Variant::kBraided)).size() == 4);
}

TEST_CASE("ball vertices match attachment growth") {
  for (Variant v : {Variant::kPlanar, Variant::kCyclic, Variant::kBraided}) {
    int r = v == Variant::kBraided ? 3 : 4;
    BallGraph g = ball(X(), "x", r, v);
    std::set<std::string> keys;
    for (const Vertex& w : g.vertices) keys.insert(w.key());
    CHECK(keys == grown_keys(r, v));
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      CHECK(g.depth[i] == g.vertices[i].size());
    for (auto [a, b] : g.edges) CHECK(std::abs(g.depth[a] - g.depth[b]) == 1);
  }
  // hand count: 9 trees with at most 3 carets, plus a caret pair closed by
  // a merge on either side
  CHECK(ball(X(), "x", 3, Variant::kPlanar).vertices.size() == 11);
}

TEST_CASE("ball radius cap and export formats") {
  CHECK_THROWS_AS(ball(X(), "x", 7, Variant::kPlanar), Error);
  BallGraph g = ball(X(), "x", 1, Variant::kPlanar);
  CHECK(export_text(g) == "vertex P:x:\nvertex P:x:1f(t1)\nedge P:x: P:x:1f(t1)\n");
  CHECK(export_dot(g).rfind("graph ball {", 0) == 0);
  CHECK(g.index_of("P:x:1f(t1)") >= 0);
  CHECK(g.index_of("nope") == -1);
}

TEST_CASE("order agrees with injection search and the graph metric") {
  BallGraph g = ball(X(), "x", 3, Variant::kPlanar);
  auto dist = oracle::bfs_distances(g);
  int base = oracle::base_index(g);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = 0; j < g.vertices.size(); ++j) {
      const Vertex &u = g.vertices[i], &v = g.vertices[j];
      bool leq = vertex_leq(u, v);
      CHECK(leq == oracle::graph_leq(dist, base, int(i), int(j)));
      CHECK(leq == oracle::brute_embeds(u.picture(), v.picture()));
      if (i != j && leq) CHECK_FALSE(vertex_leq(v, u));
    }
}

TEST_CASE("lub is the least common upper bound") {
  BallGraph small = ball(X(), "x", 3, Variant::kPlanar);
  BallGraph big = ball(X(), "x", 6, Variant::kPlanar);
  auto dist = oracle::bfs_distances(big);
  int base = oracle::base_index(big);
  for (const Vertex& u : small.vertices)
    for (const Vertex& v : small.vertices) {
      int iu = big.index_of(u.key()), iv = big.index_of(v.key());
      int best = -1;
      for (std::size_t w = 0; w < big.vertices.size(); ++w)
        if (oracle::graph_leq(dist, base, iu, int(w)) && oracle::graph_leq(dist, base, iv, int(w)))
          if (best < 0 || big.vertices[w].size() < big.vertices[best].size()) best = int(w);
      auto l = lub(u, v);
      CHECK(l.has_value() == (best >= 0));
      if (l && best >= 0) {
        CHECK(l->size() == big.vertices[best].size());
        CHECK(vertex_leq(u, *l));
        CHECK(vertex_leq(v, *l));
      }
    }
}

TEST_CASE("downsets match brute force on random pictures") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Picture p = reduce(gen::random_picture(rng, X(), "x", static_cast<Variant>(i % 3), 8));
    auto a = downsets(p), b = oracle::brute_downsets(p);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(initial_subsets(vertex_of(p)).size() == a.size());
  }
}

TEST_CASE("cubes at a vertex match the ball graph") {
  for (Variant var : {Variant::kPlanar, Variant::kCyclic}) {
    BallGraph g = ball(X(), "x", 5, var);
    for (const char* t : {"(. .)", "((. .) .)", "((. .) (. .))"}) {
      Vertex v = tree(t, var);
      int vi = g.index_of(v.key());
      REQUIRE(vi >= 0);
      auto cubes = cubes_at(v, 8);
      int ones = 0, twos = 0;
      for (const Cube& c : cubes) {
        ones += c.dimension() == 1;
        twos += c.dimension() == 2;
        // corners are distinct and flipping one bit is an edge
        std::set<std::string> corners;
        for (unsigned m = 0; m < (1u << c.dimension()); ++m) {
          Vertex a = c.corner(m);
          corners.insert(a.key());
          for (int bit = 0; bit < c.dimension(); ++bit) {
            Vertex b = c.corner(m ^ (1u << bit));
            CHECK(std::abs(a.size() - b.size()) == 1);
            CHECK(edge_distance(a, b) == 1);
          }
        }
        CHECK(corners.size() == (1u << c.dimension()));
      }
      CHECK(ones == static_cast<int>(g.adjacency()[vi].size()));
      if (v.size() <= 3) CHECK(twos == squares_through(g, vi));
    }
  }
}

TEST_CASE("the T2 to T3 cube") {
  Vertex t2 = tree("((. .) (. .))"), t3 = tree("(((. .) (. .)) ((. .) (. .)))");
  int found = 0;
  for (const Cube& c : cubes_at(t2, 4))
    if (c.dimension() == 4 && c.min_vertex() == t2 && c.max_vertex() == t3) ++found;
  CHECK(found == 1);
  CHECK_THROWS_AS(Cube(t3.picture(), {0}), Error);  // the root caret is not maximal
}
