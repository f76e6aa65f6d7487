#include <random>

#include "diagcx/hyperplane.hpp"
#include "diagcx/sample.hpp"
#include "diagcx/thompson.hpp"
#include "doctest.h"

using namespace diagcx;

namespace {

Vertex tree(const char* bracket, Variant v = Variant::kPlanar) {
  return vertex_of(parse_tree(bracket, v));
}

}  // namespace

TEST_CASE("generator shapes") {
  CHECK(f_generator(0).size() == 4);
  CHECK(f_generator(1).size() == 6);
  CHECK(f_generator(0).variant() == Variant::kPlanar);
  CHECK(t_rotation(1).variant() == Variant::kCyclic);
  CHECK_THROWS_AS(f_generator(2), Error);
  CHECK_THROWS_AS(t_rotation(0), Error);
  CHECK(tree_bracket_of({"", "0"}) == "((. .) .)");
  CHECK(tree_leaves({"", "1"}) == std::vector<std::string>{"0", "10", "11"});
  CHECK(carets(tree("((. .) (. .))")) == std::vector<std::string>{"", "0", "1"});
  CHECK(grid_carets(1, 2) == std::vector<std::string>{"", "0", "1", "11"});
  CHECK(full_carets(2).size() == 3);
}

TEST_CASE("x0 on small trees") {
  GroupElement x0 = parse_element("x0");
  CHECK(act(x0, tree("((. .) (. (. .)))")) == tree("(((. .) .) (. .))"));
  // the base vertex side: x0 of the one-caret tree needs the reduction to
  // leave a merge at the bottom, so the image is no longer a tree
  Vertex img = act(x0, tree("(. .)"));
  CHECK(img.size() == 3);
  CHECK_FALSE(is_positive_tree(img.picture()));
}

TEST_CASE("products agree with tree-pair composition") {
  std::mt19937_64 rng(11);
  for (Variant var : {Variant::kPlanar, Variant::kCyclic, Variant::kBraided})
    for (int i = 0; i < 30; ++i) {
      TreePair a = random_tree_pair(rng, 5, var), b = random_tree_pair(rng, 5, var);
      GroupElement g = element_of(tree_pair_picture(a, var));
      GroupElement h = element_of(tree_pair_picture(b, var));
      GroupElement gh = element_of(tree_pair_picture(compose_tree_pairs(a, b), var));
      CHECK(same_element(multiply(g, h), gh));
      TreePair r = reduce_tree_pair(compose_tree_pairs(a, b));
      CHECK(same_element(element_of(tree_pair_picture(r, var)), gh));
    }
}

TEST_CASE("group axioms on random elements") {
  std::mt19937_64 rng(12);
  for (Variant var : {Variant::kPlanar, Variant::kCyclic, Variant::kBraided})
    for (int i = 0; i < 20; ++i) {
      GroupElement a = random_element(rng, 5, var), b = random_element(rng, 5, var),
                   c = random_element(rng, 5, var);
      CHECK(same_element(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
      CHECK(is_identity(multiply(a, inverse(a))));
      CHECK(same_element(multiply(identity_element(var), a), a));
      CHECK(same_element(power(a, 3), multiply(a, multiply(a, a))));
      CHECK(is_identity(multiply(power(a, -2), power(a, 2))));
    }
}

TEST_CASE("relators") {
  CHECK(check_relation("[x0 x1^-1, x0^-1 x1 x0]"));
  CHECK(check_relation("[x0 x1^-1, x0^-2 x1 x0^2]"));
  CHECK(check_relation("x0^-1 x1 x0 x0^-1 x1^-1 x0"));
  CHECK_FALSE(check_relation("[x0, x1]"));
  CHECK_FALSE(check_relation("x0"));
  for (int k = 1; k <= 4; ++k) {
    GroupElement p = t_rotation(k);
    CHECK(is_identity(power(p, 1 << k)));
    CHECK_FALSE(is_identity(power(p, (1 << k) - 1)));
  }
}

TEST_CASE("word parsing errors") {
  CHECK_THROWS_AS(parse_element("x2"), Error);
  CHECK_THROWS_AS(parse_element("x0^"), Error);
  CHECK_THROWS_AS(parse_element("[x0, x1"), Error);
  CHECK_THROWS_AS(parse_element("pi0"), Error);
  CHECK(is_identity(parse_element("e")));
  CHECK(same_element(parse_element("pi2"), t_rotation(2)));
}

TEST_CASE("action is a left action") {
  std::mt19937_64 rng(13);
  for (Variant var : {Variant::kPlanar, Variant::kCyclic, Variant::kBraided})
    for (int i = 0; i < 25; ++i) {
      GroupElement g = random_element(rng, 4, var), h = random_element(rng, 4, var);
      Vertex v = vertex_of(sample::random_tree(rng, 3, var));
      CHECK(act(multiply(g, h), v) == act(g, act(h, v)));
      CHECK(act(identity_element(var), v) == v);
      // isometry
      Vertex w = tree_vertex({"", "0"}, var);
      CHECK(edge_distance(act(g, v), act(g, w)) == edge_distance(v, w));
    }
}

TEST_CASE("grid trees") {
  CHECK(grid_tree(1, 1) == tree("((. .) (. .))"));
  CHECK(grid_tree(0, 0) == tree("(. .)"));
  CHECK(grid_tree_hat(1, 1) == tree("((. .) ((. .) .))"));
  CHECK(full_tree(2) == grid_tree(1, 1));
  GroupElement x0 = f_generator(0);
  // x0 shifts the grid one step from the right arm to the left arm
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) CHECK(act(x0, grid_tree(m, n)) == grid_tree(m + 1, n - 1));
  CHECK_THROWS_AS(full_tree(kMaxTreeDepth + 1), Error);
}

TEST_CASE("link condition near grid trees") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) CHECK(link_condition_check(m, n));
  CHECK_THROWS_AS(link_condition_check(0, 1), Error);
}
