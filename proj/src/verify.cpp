#include "diagcx/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "diagcx/embed.hpp"
#include "diagcx/oracles.hpp"
#include "diagcx/profile.hpp"
#include "diagcx/sample.hpp"

namespace diagcx {

namespace {

// Counts checks and keeps the first failure.
class Tally {
 public:
  void operator()(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failed_++ == 0) first_ = what;
  }
  bool pass() const { return failed_ == 0; }
  std::string detail() const {
    if (pass()) return std::to_string(count_) + " checks";
    return first_ + (failed_ > 1 ? " (+" + std::to_string(failed_ - 1) + " more)" : "");
  }

 private:
  int count_ = 0, failed_ = 0;
  std::string first_;
};

auto X() { return Presentation::thompson(); }

// 1: every removal order reaches the same reduced picture.
void normal_forms(const VerifyOptions& opt, Tally& t) {
  std::mt19937_64 rng(opt.seed + 1);
  for (int i = 0; i < 200; ++i) {
    bool abcd = i % 2;
    auto pres = abcd ? sample::abcd() : X();
    Word top = abcd ? sample::random_word(rng, "abcd", 5) : "xx";
    Picture p = sample::random_picture(rng, pres, top, static_cast<Variant>(i % 3), 14);
    std::string expect = canonical_serialize(reduce(p));
    for (int k = 0; k < 10; ++k)
      t(canonical_serialize(sample::reduce_randomly(p, rng)) == expect,
        "picture " + std::to_string(i) + ": removal order changed the normal form");
  }
}

// 2: associativity, inverses, tree-pair arithmetic and relators.
void group_structure(const VerifyOptions& opt, Tally& t) {
  std::mt19937_64 rng(opt.seed + 2);
  std::vector<TreePair> pairs;
  std::vector<GroupElement> f;
  while (f.size() < 50) {
    TreePair tp = random_tree_pair(rng, 1 + static_cast<int>(rng() % 5), Variant::kPlanar);
    GroupElement g = element_of(tree_pair_picture(tp, Variant::kPlanar));
    if (g.size() > 8) continue;
    pairs.push_back(tp);
    f.push_back(g);
  }
  std::vector<GroupElement> v;
  for (int i = 0; i < 20; ++i) v.push_back(random_element(rng, 4, Variant::kBraided));

  auto triples = [&](const std::vector<GroupElement>& s, const char* name) {
    const std::size_t n = s.size();
    std::vector<std::vector<GroupElement>> prod(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) prod[i].push_back(multiply(s[i], s[j]));
    for (std::size_t i = 0; i < n; ++i) {
      t(is_identity(multiply(s[i], inverse(s[i]))) && is_identity(multiply(inverse(s[i]), s[i])),
        std::string(name) + " element " + std::to_string(i) + " times its inverse");
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          t(canonical_serialize(multiply(prod[i][j], s[k]).picture) ==
                canonical_serialize(multiply(s[i], prod[j][k]).picture),
            std::string(name) + " triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(k) + ") not associative");
    }
    return prod;
  };
  auto prod = triples(f, "F");
  triples(v, "V");
  // Products agree with caret-address arithmetic.
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      TreePair c = compose_tree_pairs(pairs[i], pairs[j]);
      t(same_element(element_of(tree_pair_picture(c, Variant::kPlanar)), prod[i][j]),
        "tree-pair product " + std::to_string(i) + "," + std::to_string(j) + " differs");
    }
  for (const char* w : {"x0 x0^-1", "pi1 pi1", "[x0 x1^-1, x0^-1 x1 x0]"})
    t(check_relation(w), std::string("relation ") + w + " fails");
  t(!check_relation("x0 x1"), "x0 x1 reported as a relation");
}

// 3: downsets are the vertices below, and distances count hyperplanes.
void order_and_distance(const VerifyOptions&, Tally& t) {
  for (auto [variant, radius] : {std::pair{Variant::kPlanar, 4}, {Variant::kBraided, 3}}) {
    BallGraph g = ball(X(), "x", radius, variant);
    auto dist = oracle::bfs_distances(g);
    const int base = oracle::base_index(g);
    const int n = static_cast<int>(g.vertices.size());
    const std::string tag = std::string(variant_name(variant)) + " ";
    for (int vi = 0; vi < n; ++vi) {
      const Vertex& v = g.vertices[vi];
      const Picture& p = v.picture();
      auto masks = downsets(p);
      auto brute = oracle::brute_downsets(p);
      std::sort(masks.begin(), masks.end());
      std::sort(brute.begin(), brute.end());
      t(masks == brute, tag + v.key() + ": downset enumeration differs from brute force");
      std::set<std::string> below;
      for (const auto& m : masks) below.insert(vertex_of(restrict_to(p, m).picture).key());
      std::set<std::string> expect;
      for (int ui = 0; ui < n; ++ui)
        if (oracle::graph_leq(dist, base, ui, vi)) expect.insert(g.vertices[ui].key());
      t(below.size() == masks.size() && below == expect,
        tag + v.key() + ": downsets do not match the vertices below it");
      t(edge_distance(g.vertices[base], v) == v.size() && dist[base][vi] == v.size(),
        tag + v.key() + ": distance from the base is not the transistor count");
      for (int ui = vi + 1; ui < n; ++ui)
        t(edge_distance(g.vertices[ui], v) == dist[ui][vi],
          tag + "separating count differs from graph distance");
    }
  }
}

// Distinct hyperplanes of the vertices of a ball.
std::vector<Hyperplane> ball_hyperplanes(const BallGraph& g) {
  std::map<std::string, Hyperplane> hs;
  for (const Vertex& v : g.vertices)
    for (const Hyperplane& h : hyperplanes_below(v)) hs.emplace(h.key(), h);
  std::vector<Hyperplane> r;
  for (auto& [k, h] : hs) r.push_back(h);
  return r;
}

// 4: half-space order and intersection against cuts in the ball graph.
void halfspaces(const VerifyOptions&, Tally& t) {
  auto hs = ball_hyperplanes(ball(X(), "x", 4, Variant::kPlanar));
  int reach = 0;
  for (const auto& h : hs) reach = std::max(reach, 2 * h.min().size());
  // A common upper bound of two min vertices has at most |m1| + |m2| transistors.
  BallGraph g = ball(X(), "x", reach, Variant::kPlanar, BallLimits{reach, 1000000});
  int classes = 0;
  auto cls = oracle::square_classes(g, &classes);
  const int n = static_cast<int>(g.vertices.size());
  // Half-space of h: vertices cut off from the base by h's edge class.
  std::vector<std::vector<bool>> side;
  for (const auto& h : hs) {
    const Picture& mp = h.min().picture();
    Vertex lower = vertex_of(remove_maximal(mp, mp.maximal().at(0)).picture);
    std::pair<int, int> e{g.index_of(lower.key()), g.index_of(h.min().key())};
    if (e.first > e.second) std::swap(e.first, e.second);
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    if (it == g.edges.end() || *it != e) {
      t(false, h.label() + ": dual edge missing from the ball");
      return;
    }
    side.push_back(oracle::cut_off_by_class(g, cls, cls[it - g.edges.begin()]));
  }
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = 0; j < hs.size(); ++j) {
      bool contained = true, meet = false;
      for (int v = 0; v < n; ++v) {
        if (side[j][v] && !side[i][v]) contained = false;
        if (side[i][v] && side[j][v]) meet = true;
      }
      const std::string pair = hs[i].label() + " / " + hs[j].label();
      t(halfspace_leq(hs[i], hs[j]) == contained, pair + ": half-space order disagrees");
      t(halfspaces_intersect(hs[i], hs[j]) == meet, pair + ": intersection disagrees");
    }
}

// 5: generator identities on grid trees and the link conditions.
void grid_identities(const VerifyOptions&, Tally& t) {
  GroupElement x0 = f_generator(0), x1 = f_generator(1);
  for (int m = 2; m <= 6; ++m)
    for (int n = 2; n <= 6; ++n) {
      Vertex v = grid_tree(m, n);
      const std::string at = "T(" + std::to_string(m) + "," + std::to_string(n) + ")";
      Vertex a = act(x0, v), b = act(x1, v);
      t(a == grid_tree(m + 1, n - 1), "x0 on " + at);
      t(b == grid_tree_hat(m, n - 1), "x1 on " + at);
      t(edge_distance(v, a) == 2 && edge_distance(v, b) == 2, "translation distance at " + at);
    }
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      t(link_condition_check(m, n),
        "link condition at T(" + std::to_string(m) + "," + std::to_string(n) + ")");
}

// 6: x0 and x1 fix the four profiles and move the spot-check patterns.
void fixed_profiles(const VerifyOptions& opt, Tally& t) {
  const int d = opt.depth;
  for (const char* g : {"x0", "x1"})
    for (ProfileKind k : {ProfileKind::kL, ProfileKind::kR, ProfileKind::kLR, ProfileKind::kInf})
      t(is_fixed_to_depth(parse_element(g), k, d),
        std::string(g) + " moves " + profile_kind_name(k));
  for (auto [name, g] : {std::pair{"open-left", "x0"}, {"zipper", "x1"}}) {
    TruncatedProfile p = sample_profile(name, d);
    GroupElement e = parse_element(g);
    t(validate_profile(p).ok, std::string(name) + " is not a valid profile");
    int diff = first_difference_depth(act_profile(e, p), p);
    t(!is_fixed_to_depth(e, p) && diff >= 0 && diff <= 3,
      std::string(g) + " does not visibly move " + name);
  }
  TruncatedProfile stranded = sample_profile("stranded", d);
  t(!solid_extension_feasible(stranded) && !validate_profile(stranded).ok,
    "stranded merge accepted as feasible");
}

// 7: rotations fix only the all-solid profile.
void rotation_profiles(const VerifyOptions& opt, Tally& t) {
  const int d = opt.depth;
  GroupElement p1 = t_rotation(1), p2 = t_rotation(2);
  for (ProfileKind k : {ProfileKind::kL, ProfileKind::kR, ProfileKind::kLR})
    t(!is_fixed_to_depth(p1, k, d), std::string("pi1 fixes ") + profile_kind_name(k));
  t(is_fixed_to_depth(p1, ProfileKind::kInf, d), "pi1 moves INF");
  t(is_fixed_to_depth(p2, ProfileKind::kInf, d), "pi2 moves INF");
}

// 8: rotations fix full trees; the 4-cube from T2 to T3 and pi2 on it.
void rotation_vertices(const VerifyOptions&, Tally& t) {
  const Vertex t1 = full_tree(1, Variant::kCyclic), t2 = full_tree(2, Variant::kCyclic),
               t3 = full_tree(3, Variant::kCyclic);
  t(act(t_rotation(1), t1) == t1, "pi1 moves T1");
  t(act(t_rotation(2), t2) == t2, "pi2 moves T2");
  const Cube* found = nullptr;
  auto cubes = cubes_at(t2, 4);
  for (const Cube& c : cubes)
    if (c.dimension() == 4 && c.min_vertex() == t2 && c.max_vertex() == t3) found = &c;
  t(found != nullptr, "no 4-cube from T2 to T3");
  if (!found) return;
  std::map<std::string, int> single;
  for (int i = 0; i < 4; ++i) single[found->corner(1u << i).key()] = i;
  std::vector<int> sigma(4, -1);
  for (int i = 0; i < 4; ++i) {
    auto it = single.find(act(t_rotation(2), found->corner(1u << i)).key());
    t(it != single.end(), "pi2 carries a corner of the cube outside it");
    if (it == single.end()) return;
    sigma[i] = it->second;
  }
  int len = 0;
  for (int i = 0;; i = sigma[i]) {
    ++len;
    if (sigma[i] == 0 || len > 4) break;
  }
  t(len == 4, "pi2 does not cycle the four white transistors");
}

// All-ones tree with carets at the root, 1, 10, 11 and `extra` random ones.
LabelledTree random_admissible_tree(std::mt19937_64& rng, int extra) {
  std::vector<std::string> carets{"", "1", "10", "11"};
  for (int i = 0; i < extra; ++i) {
    auto leaves = tree_leaves(carets);
    carets.push_back(leaves[rng() % leaves.size()]);
  }
  return all_ones(carets);
}

// 9: displacement decomposition and its bounds.
void displacement_suite(const VerifyOptions& opt, Tally& t) {
  std::mt19937_64 rng(opt.seed + 9);
  for (int i = 0; i < 200; ++i) {
    LabelledTree tr = random_admissible_tree(rng, static_cast<int>(rng() % 9));
    Decomposition d = displacement_decomposition(tr);
    double direct = oracle::address_diff_squared(tr.coeffs, oracle::x0_readdress(tr.coeffs));
    const std::string at = format_tree(tr);
    t(d.total == direct, at + ": decomposition total differs from the direct value");
    t(d.a >= 2 && d.c >= 1 && d.total >= 3, at + ": decomposition bound fails");
  }
}

// 10: low-displacement witnesses.
void low_displacement(const VerifyOptions&, Tally& t) {
  const double root2 = std::sqrt(2.0);
  for (int m = 1; m <= 4; ++m) {
    auto r = search_low_displacement(m, root2);
    t(r.has_value(), "no witness at m = " + std::to_string(m));
    if (!r) continue;
    double direct = oracle::address_diff_squared(r->tree.coeffs, oracle::x0_readdress(r->tree.coeffs));
    t(std::abs(direct - r->displacement_squared) <= 1e-12 && std::sqrt(direct) <= root2 + 1e-12,
      "witness at m = " + std::to_string(m) + " fails the direct check");
    if (m == 1) t(direct <= 1.5 + 1e-12, "m = 1 witness above sqrt(3/2)");
  }
  t(!search_low_displacement(1, 0.1).has_value(), "witness below 0.1 at m = 1");
}

// 11: the embedding realizes the hyperplane metric and commutes with x0.
void embedding_consistency(const VerifyOptions&, Tally& t) {
  BallGraph g = ball(X(), "x", 4, Variant::kPlanar);
  auto dist = oracle::bfs_distances(g);
  const int n = static_cast<int>(g.vertices.size());
  std::vector<SparseVector> rho;
  for (const Vertex& v : g.vertices) rho.push_back(rho_vertex(v));
  t(rho[oracle::base_index(g)].entries.empty(), "base vertex maps to a nonzero vector");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      t(l2_distance_squared(rho[i], rho[j]) == dist[i][j],
        "squared embedding distance differs from graph distance");
  GroupElement x0 = f_generator(0);
  for (const Vertex& v : ball(X(), "x", 5, Variant::kPlanar).vertices) {
    if (!is_positive_tree(v.picture())) continue;
    LabelledTree tr = tree_of_vector(rho_vertex(v));
    if (!tr.coeffs.count("") || !tr.coeffs.count("1")) continue;
    LabelledTree moved = tree_of_vector(rho_vertex(act(x0, v)));
    t(moved == x0_action_tree(tr) && moved.coeffs == oracle::x0_readdress(tr.coeffs),
      format_tree(tr) + ": x0 does not commute with the embedding");
  }
}

struct Criterion {
  const char* name;
  void (*run)(const VerifyOptions&, Tally&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"normal forms independent of removal order", normal_forms},
    {"group axioms, tree-pair products, relators", group_structure},
    {"downsets, base distance, separating counts", order_and_distance},
    {"half-space order and intersection", halfspaces},
    {"grid-tree identities and link conditions", grid_identities},
    {"x0, x1 fixed profiles and spot checks", fixed_profiles},
    {"rotations fix only the all-solid profile", rotation_profiles},
    {"rotation-fixed trees and the T2-T3 cube", rotation_vertices},
    {"displacement decomposition and bounds", displacement_suite},
    {"low-displacement search", low_displacement},
    {"embedding distances and x0 naturality", embedding_consistency},
};

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  if (id < 1 || id > kCriterionCount)
    fail(ErrorCode::kInvalidInput, "criterion ids run from 1 to " + std::to_string(kCriterionCount));
  const Criterion& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    c.run(opt, t);
    r.pass = t.pass();
    r.detail = t.detail();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> verify_all(const VerifyOptions& opt) {
  std::vector<CriterionResult> r;
  for (int id = 1; id <= kCriterionCount; ++id) r.push_back(run_criterion(id, opt));
  return r;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d  %-45s (%.2f s)  ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace diagcx
