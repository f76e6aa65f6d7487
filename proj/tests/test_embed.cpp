#include <cmath>
#include <random>

#include "diagcx/embed.hpp"
#include "diagcx/oracles.hpp"
#include "diagcx/sample.hpp"
#include "diagcx/thompson.hpp"
#include "doctest.h"

using namespace diagcx;
using doctest::Approx;

namespace {

Vertex tree(const char* bracket, Variant v = Variant::kPlanar) {
  return vertex_of(parse_tree(bracket, v));
}

LabelledTree lt(const char* s) { return parse_labelled_tree(s); }

}  // namespace

TEST_CASE("rho of small vertices") {
  auto X = Presentation::thompson();
  CHECK(rho_vertex(base_vertex(X, "x", Variant::kPlanar)).entries.empty());
  SparseVector t2 = rho_vertex(tree("((. .) (. .))"));
  CHECK(t2.entries.size() == 3);
  CHECK(l2_distance_squared(t2, SparseVector{}) == Approx(3));
  CHECK(format_vector(rho_vertex(tree("(. .)"))) == "(@ε, 1)");
}

TEST_CASE("rho is an isometry on vertices (squared distance = edge distance)") {
  for (Variant var : {Variant::kPlanar, Variant::kBraided}) {
    BallGraph g = ball(Presentation::thompson(), "x", 3, var);
    auto dist = oracle::bfs_distances(g);
    std::vector<SparseVector> r;
    for (const Vertex& v : g.vertices) r.push_back(rho_vertex(v));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j)
        CHECK(l2_distance_squared(r[i], r[j]) == Approx(dist[i][j]));
  }
  CHECK(l2_distance(rho_vertex(grid_tree(2, 2)), rho_vertex(grid_tree(3, 1))) ==
        Approx(std::sqrt(2.0)));
}

TEST_CASE("cube points") {
  Vertex t2 = tree("((. .) (. .))");
  for (const Cube& c : cubes_at(t2, 4)) {
    if (c.dimension() != 4 || c.min_vertex() != t2) continue;
    for (double t : {0.25, 0.5, 1.0}) {
      SparseVector p = rho_cube_point(c, std::vector<double>(4, t));
      CHECK(l2_distance(p, rho_vertex(t2)) == Approx(2 * t));
    }
    CHECK(rho_cube_point(c, std::vector<double>(4, 1.0)) == rho_vertex(c.max_vertex()));
    CHECK_THROWS_AS(rho_cube_point(c, {0.5}), Error);
    CHECK_THROWS_AS(rho_cube_point(c, {0.5, 0.5, 0.5, 1.5}), Error);
  }
}

TEST_CASE("labelled tree text") {
  for (const char* s : {".", "(. .)", "(. .)@0.5", "((. .)@0.25 (. .))", "(. (. (. .)@0.5))"})
    CHECK(format_tree(lt(s)) == s);
  CHECK_THROWS_AS(lt("(.)"), Error);
  CHECK_THROWS_AS(lt("(. .)@1.5"), Error);
  CHECK_THROWS_AS(lt("((. .) .)@0.5"), Error);  // inner carets carry 1
  CHECK(tree_of_vector(vector_of_tree(lt("((. .)@0.25 (. .))"))) == lt("((. .)@0.25 (. .))"));
}

TEST_CASE("subtrees, split and wedge") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    LabelledTree t = all_ones(carets(vertex_of(sample::random_tree(rng, 1 + i % 6))));
    auto [l, r] = split(t);
    CHECK(wedge(l, r) == t);
    CHECK(subtree_at(t, "0") == l);
    CHECK(subtree_at(t, "1") == r);
  }
  CHECK(subtree_at(lt("((. .) .)"), "1").empty());
  CHECK_THROWS_AS(split(LabelledTree{}), Error);
}

TEST_CASE("x0 on labelled trees matches readdressing") {
  CHECK(format_tree(x0_action_tree(lt("((. .) (. (. .)@0.5))"))) == "(((. .) .) (. .)@0.5)");
  CHECK_THROWS_AS(x0_action_tree(lt("(. .)")), Error);
  CHECK_THROWS_AS(x0_action_tree(lt("(. (. .)@0.5)")), Error);
  CHECK(displacement_squared(lt("(. (. (. .)@0.5))")) == Approx(1.5));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    LabelledTree t = all_ones(carets(grid_tree(1 + i % 3, 1 + i % 4)));
    LabelledTree img = x0_action_tree(t);
    CHECK(img.coeffs == oracle::x0_readdress(t.coeffs));
    CHECK(tree_distance_squared(t, img) == Approx(oracle::address_diff_squared(t.coeffs, img.coeffs)));
    // the vertex action agrees
    CHECK(img == all_ones(carets(act(f_generator(0), grid_tree(1 + i % 3, 1 + i % 4)))));
  }
}

TEST_CASE("displacement decomposition") {
  LabelledTree hat = all_ones(carets(grid_tree_hat(2, 2)));
  Decomposition d = displacement_decomposition(hat);
  CHECK(d.total == Approx(displacement_squared(hat)));
  CHECK(d.a + d.b + d.c == Approx(d.total));
  Decomposition g = displacement_decomposition(lt("((. .) ((. .) (. .)))"));
  CHECK(g.a == Approx(2));
  CHECK(g.b == Approx(1));
  CHECK(g.c == Approx(1));
  CHECK(g.total == Approx(4));
  CHECK_THROWS_AS(displacement_decomposition(lt("((. .) (. .))")), Error);
}

TEST_CASE("low-displacement search") {
  for (int m = 1; m <= 2; ++m) {
    auto r = search_low_displacement(m, 1.5);
    REQUIRE(r.has_value());
    CHECK(r->displacement_squared <= 1.5);
    CHECK(displacement_squared(r->tree) == Approx(r->displacement_squared));
  }
  CHECK_FALSE(search_low_displacement(1, 0.1).has_value());
  CHECK_THROWS_AS(search_low_displacement(0, 1), Error);
}
