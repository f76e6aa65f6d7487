#include "diagcx/embed.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <set>

#include "diagcx/thompson.hpp"

namespace diagcx {

namespace {

std::string number(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

bool in_unit(double x) { return x > 0.0 && x <= 1.0; }

bool has_child(const LabelledTree& t, const std::string& a) {
  return t.coeffs.count(a + "0") || t.coeffs.count(a + "1");
}

// Root-relative copy of the subtree at `bin`, shifted under `prefix`.
void graft(const LabelledTree& from, const std::string& bin, const std::string& prefix,
           LabelledTree& into) {
  for (auto it = from.coeffs.lower_bound(bin);
       it != from.coeffs.end() && it->first.compare(0, bin.size(), bin) == 0; ++it)
    into.coeffs[prefix + it->first.substr(bin.size())] = it->second;
}

}  // namespace

SparseVector rho_vertex(const Vertex& v) {
  SparseVector r;
  for (const Hyperplane& h : hyperplanes_below(v)) r.entries[h.label()] = 1.0;
  return r;
}

SparseVector rho_cube_point(const Cube& c, const std::vector<double>& coords) {
  if (coords.size() != c.white().size())
    fail(ErrorCode::kMismatch, "one coordinate per white transistor expected");
  for (double x : coords)
    if (!in_unit(x)) fail(ErrorCode::kInvalidInput, "cube coordinates lie in (0,1]");
  const Picture& top = c.top();
  SparseVector r;
  for (int t = 0; t < top.size(); ++t) {
    std::vector<bool> keep(top.size());
    for (int q : top.downset(t)) keep[q] = true;
    keep[t] = true;
    Hyperplane h(vertex_of(restrict_to(top, keep).picture));
    auto w = std::find(c.white().begin(), c.white().end(), t);
    r.entries[h.label()] = w == c.white().end() ? 1.0 : coords[w - c.white().begin()];
  }
  return r;
}

double l2_distance_squared(const SparseVector& a, const SparseVector& b) {
  double s = 0;
  auto i = a.entries.begin(), j = b.entries.begin();
  while (i != a.entries.end() || j != b.entries.end()) {
    if (j == b.entries.end() || (i != a.entries.end() && i->first < j->first)) {
      s += i->second * i->second;
      ++i;
    } else if (i == a.entries.end() || j->first < i->first) {
      s += j->second * j->second;
      ++j;
    } else {
      double d = i->second - j->second;
      s += d * d;
      ++i, ++j;
    }
  }
  return s;
}

double l2_distance(const SparseVector& a, const SparseVector& b) {
  return std::sqrt(l2_distance_squared(a, b));
}

std::string format_vector(const SparseVector& v) {
  std::string s;
  for (const auto& [k, x] : v.entries) {
    if (!s.empty()) s += ' ';
    s += "(" + k + ", " + number(x) + ")";
  }
  return s;
}

void validate_tree(const LabelledTree& t) {
  for (const auto& [a, x] : t.coeffs) {
    if (a.find_first_not_of("01") != std::string::npos)
      fail(ErrorCode::kInvalidInput, "caret address '" + a + "' is not binary");
    if (!in_unit(x)) fail(ErrorCode::kInvalidInput, "coefficient at '" + a + "' outside (0,1]");
    if (!a.empty() && !t.coeffs.count(a.substr(0, a.size() - 1)))
      fail(ErrorCode::kInvalidInput, "caret '" + a + "' has no parent");
    if (x != 1.0 && has_child(t, a))
      fail(ErrorCode::kInvalidInput, "inner caret '" + a + "' must carry 1");
  }
}

LabelledTree all_ones(const std::vector<std::string>& carets) {
  LabelledTree t;
  for (const auto& a : carets) t.coeffs[a] = 1.0;
  validate_tree(t);
  return t;
}

std::string format_tree(const LabelledTree& t) {
  // Iterative pre-order; `)` and suffixes are emitted on the way back up.
  std::string s;
  struct Frame {
    std::string addr;
    int stage;
  };
  std::vector<Frame> st{{"", 0}};
  while (!st.empty()) {
    Frame& f = st.back();
    auto it = t.coeffs.find(f.addr);
    if (it == t.coeffs.end()) {
      s += '.';
      st.pop_back();
      continue;
    }
    if (f.stage == 0) {
      s += '(';
      f.stage = 1;
      st.push_back({f.addr + "0", 0});
    } else if (f.stage == 1) {
      s += ' ';
      f.stage = 2;
      st.push_back({f.addr + "1", 0});
    } else {
      s += ')';
      if (it->second != 1.0) s += "@" + number(it->second);
      st.pop_back();
    }
  }
  return s;
}

LabelledTree parse_labelled_tree(std::string_view text) {
  LabelledTree t;
  struct Open {
    std::string addr;
    int children;
  };
  std::vector<Open> open;
  std::size_t i = 0;
  bool done = false;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto here = [&] {
    return open.empty() ? std::string() : open.back().addr + (open.back().children ? "1" : "0");
  };
  auto finished = [&] {
    if (open.empty()) done = true;
    else if (++open.back().children > 2)
      fail(ErrorCode::kInvalidInput, "a caret has two children");
  };
  while (skip(), !done) {
    if (i >= text.size()) fail(ErrorCode::kInvalidInput, "labelled tree ends early");
    char c = text[i++];
    if (c == '.') {
      finished();
    } else if (c == '(') {
      std::string a = here();
      if (a.size() >= 64) fail(ErrorCode::kResourceLimit, "labelled tree deeper than 64");
      t.coeffs[a] = 1.0;
      open.push_back({a, 0});
    } else if (c == ')') {
      if (open.empty() || open.back().children != 2)
        fail(ErrorCode::kInvalidInput, "')' must close a caret with two children");
      std::string a = open.back().addr;
      open.pop_back();
      if (i < text.size() && text[i] == '@') {
        double x = 0;
        auto r = std::from_chars(text.data() + i + 1, text.data() + text.size(), x);
        if (r.ec != std::errc()) fail(ErrorCode::kInvalidInput, "bad coefficient after '@'");
        i = r.ptr - text.data();
        t.coeffs[a] = x;
      }
      finished();
    } else {
      fail(ErrorCode::kInvalidInput, std::string("unexpected '") + c + "' in labelled tree");
    }
  }
  if (i != text.size()) fail(ErrorCode::kInvalidInput, "trailing text after labelled tree");
  validate_tree(t);
  return t;
}

SparseVector vector_of_tree(const LabelledTree& t) {
  SparseVector v;
  for (const auto& [a, x] : t.coeffs) v.entries["@" + (a.empty() ? std::string("ε") : a)] = x;
  return v;
}

LabelledTree tree_of_vector(const SparseVector& v) {
  LabelledTree t;
  for (const auto& [k, x] : v.entries) {
    if (k.empty() || k[0] != '@') fail(ErrorCode::kInvalidInput, "'" + k + "' is not a caret label");
    std::string a = k.substr(1);
    t.coeffs[a == "ε" ? std::string() : a] = x;
  }
  validate_tree(t);
  return t;
}

LabelledTree subtree_at(const LabelledTree& t, const std::string& bin) {
  LabelledTree r;
  graft(t, bin, "", r);
  return r;
}

std::pair<LabelledTree, LabelledTree> split(const LabelledTree& t) {
  auto it = t.coeffs.find("");
  if (it == t.coeffs.end()) fail(ErrorCode::kPrecondition, "cannot split the empty tree");
  if (it->second != 1.0) fail(ErrorCode::kPrecondition, "split needs root coefficient 1");
  return {subtree_at(t, "0"), subtree_at(t, "1")};
}

LabelledTree wedge(const LabelledTree& a, const LabelledTree& b) {
  LabelledTree r;
  r.coeffs[""] = 1.0;
  graft(a, "", "0", r);
  graft(b, "", "1", r);
  return r;
}

LabelledTree x0_action_tree(const LabelledTree& t) {
  auto root = t.coeffs.find(""), one = t.coeffs.find("1");
  if (root == t.coeffs.end() || one == t.coeffs.end() || root->second != 1.0 || one->second != 1.0)
    fail(ErrorCode::kPrecondition, "x0 acts on trees with coefficient 1 at the root and at 1");
  auto [t1, rest] = split(t);
  auto [t2, t3] = split(rest);
  return wedge(wedge(t1, t2), t3);
}

double tree_distance_squared(const LabelledTree& a, const LabelledTree& b) {
  return l2_distance_squared(SparseVector{a.coeffs}, SparseVector{b.coeffs});
}

double displacement_squared(const LabelledTree& t) {
  return tree_distance_squared(t, x0_action_tree(t));
}

Decomposition displacement_decomposition(const LabelledTree& t) {
  validate_tree(t);
  for (const auto& [a, x] : t.coeffs)
    if (x != 1.0) fail(ErrorCode::kPrecondition, "decomposition needs an all-ones tree");
  for (const char* a : {"", "1", "10", "11"})
    if (!t.coeffs.count(a))
      fail(ErrorCode::kPrecondition, "decomposition needs carets at the root, 1, 10 and 11");
  LabelledTree t1 = subtree_at(t, "0"), t2 = subtree_at(t, "10"), t3 = subtree_at(t, "11");
  Decomposition d;
  d.a = tree_distance_squared(t1, wedge(t1, t2));
  d.b = tree_distance_squared(t2, subtree_at(t3, "0"));
  d.c = tree_distance_squared(t3, subtree_at(t3, "1"));
  d.total = d.a + d.b + d.c;
  return d;
}

namespace {

// option[i] = 0 for no caret under leaf i, k for a caret labelled k/8.
struct Family {
  LabelledTree base;
  std::vector<std::string> leaves;

  LabelledTree tree(const std::vector<int>& option) const {
    LabelledTree t = base;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (option[i]) t.coeffs[leaves[i]] = option[i] / 8.0;
    return t;
  }
};

using Scored = std::pair<double, std::vector<int>>;

Scored exhaustive(const Family& fam) {
  const std::size_t n = fam.leaves.size();
  std::vector<int> option(n, 0);
  Scored best{displacement_squared(fam.tree(option)), option};
  while (true) {
    std::size_t i = n;
    while (i > 0 && option[i - 1] == 8) option[--i] = 0;
    if (i == 0) break;
    ++option[i - 1];
    double d = displacement_squared(fam.tree(option));
    if (d < best.first) best = {d, option};
  }
  return best;
}

Scored beam(const Family& fam) {
  constexpr std::size_t kWidth = 48;
  constexpr int kRounds = 64;
  const std::size_t n = fam.leaves.size();
  std::vector<int> plain(n, 0), halves(n, 0);
  halves.front() = halves.back() = 4;
  std::set<Scored> frontier;
  for (const auto& o : {plain, halves}) frontier.insert({displacement_squared(fam.tree(o)), o});
  Scored best = *frontier.begin();
  std::set<std::vector<int>> seen{plain, halves};
  for (int round = 0; round < kRounds; ++round) {
    std::set<Scored> next;
    for (const auto& [score, o] : frontier)
      for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k <= 8; ++k) {
          if (k == o[i]) continue;
          auto q = o;
          q[i] = k;
          if (!seen.insert(q).second) continue;
          next.insert({displacement_squared(fam.tree(q)), q});
          if (next.size() > kWidth) next.erase(std::prev(next.end()));
        }
    if (next.empty() || !(*next.begin() < best)) break;
    best = *next.begin();
    frontier = std::move(next);
  }
  return best;
}

}  // namespace

std::optional<SearchResult> search_low_displacement(int m, double bound) {
  if (m < 1) fail(ErrorCode::kInvalidInput, "search needs m >= 1");
  if (m > 12) fail(ErrorCode::kResourceLimit, "search stops at m = 12");
  if (!(bound > 0)) fail(ErrorCode::kInvalidInput, "bound must be positive");
  auto carets = grid_carets(m, m);
  Family fam{all_ones(carets), tree_leaves(carets)};
  Scored best = m <= 2 ? exhaustive(fam) : beam(fam);
  if (best.first > bound * bound) return std::nullopt;
  return SearchResult{fam.tree(best.second), best.first};
}

}  // namespace diagcx
