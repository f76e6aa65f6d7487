#include "diagcx/thompson.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace diagcx {

namespace {

using CaretSet = std::set<std::string>;

void check_caret_set(const CaretSet& s) {
  for (const std::string& a : s) {
    for (char c : a)
      if (c != '0' && c != '1') fail(ErrorCode::kInvalidInput, "caret address '" + a + "'");
    if (!a.empty() && !s.count(a.substr(0, a.size() - 1)))
      fail(ErrorCode::kInvalidInput, "caret set is not a tree: parent of '" + a + "' missing");
  }
}

void leaves_below(const CaretSet& s, const std::string& root, std::vector<std::string>* out) {
  std::vector<std::string> stack{root};
  while (!stack.empty()) {
    std::string a = stack.back();
    stack.pop_back();
    if (!s.count(a)) {
      out->push_back(a);
      continue;
    }
    stack.push_back(a + "1");
    stack.push_back(a + "0");
  }
}

std::vector<std::string> leaves_of(const CaretSet& s) {
  std::vector<std::string> r;
  leaves_below(s, "", &r);
  return r;
}

void check_depth(int m) {
  if (m < 0) fail(ErrorCode::kInvalidInput, "negative tree parameter");
  if (m > kMaxTreeDepth)
    fail(ErrorCode::kResourceLimit, "tree parameter exceeds " + std::to_string(kMaxTreeDepth));
}

}  // namespace

std::string tree_bracket_of(const std::vector<std::string>& carets) {
  CaretSet s(carets.begin(), carets.end());
  check_caret_set(s);
  std::string out;
  std::vector<std::pair<std::string, int>> stack{{"", 0}};
  while (!stack.empty()) {
    auto& [a, state] = stack.back();
    if (!s.count(a)) {
      out += '.';
      stack.pop_back();
      continue;
    }
    if (state == 0) {
      out += '(';
      state = 1;
      std::string child = a + "0";
      stack.push_back({child, 0});
    } else if (state == 1) {
      out += ' ';
      state = 2;
      std::string child = a + "1";
      stack.push_back({child, 0});
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  return out;
}

std::vector<std::string> tree_leaves(const std::vector<std::string>& carets) {
  CaretSet s(carets.begin(), carets.end());
  check_caret_set(s);
  return leaves_of(s);
}

Picture tree_picture(const std::vector<std::string>& carets, Variant variant) {
  return parse_tree(tree_bracket_of(carets), variant);
}

Vertex tree_vertex(const std::vector<std::string>& carets, Variant variant) {
  return vertex_of(tree_picture(carets, variant));
}

std::vector<std::string> carets(const Vertex& v) {
  auto a = tree_addresses(v.picture());
  std::sort(a.begin(), a.end());
  return a;
}

Picture tree_pair_picture(const TreePair& tp, Variant variant) {
  Picture range = tree_picture(tp.range, variant);
  Picture domain = tree_picture(tp.domain, variant);
  if (range.bottom_size() != domain.bottom_size())
    fail(ErrorCode::kInvalidInput, "tree pair leaf counts differ");
  Picture wiring = make_permutation(Presentation::thompson(), range.bottom(), tp.perm, variant);
  return concatenate(range, concatenate(wiring, invert(domain)));
}

GroupElement element_of(const Picture& p) {
  if (!p.presentation().is_thompson() || p.top() != "x" || p.bottom() != "x")
    fail(ErrorCode::kMismatch, "group elements are (x,x)-pictures over <x | x = xx>");
  return {reduce(p)};
}

GroupElement identity_element(Variant variant) {
  return {make_identity(Presentation::thompson(), "x", variant)};
}

GroupElement f_generator(int i) {
  TreePair tp;
  if (i == 0) {
    tp = {{"", "1"}, {"", "0"}, {0, 1, 2}};
  } else if (i == 1) {
    tp = {{"", "1", "11"}, {"", "1", "10"}, {0, 1, 2, 3}};
  } else {
    fail(ErrorCode::kInvalidInput, "F generators are x0 and x1");
  }
  return element_of(tree_pair_picture(tp, Variant::kPlanar));
}

GroupElement t_rotation(int k) {
  if (k < 1) fail(ErrorCode::kInvalidInput, "rotation index must be at least 1");
  if (k > 12) fail(ErrorCode::kResourceLimit, "rotation index exceeds 12");
  auto c = full_carets(k);
  int n = 1 << k;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = (i + 1) % n;
  return element_of(tree_pair_picture({c, c, perm}, Variant::kCyclic));
}

GroupElement v_element(const TreePair& tp) {
  return element_of(tree_pair_picture(tp, Variant::kBraided));
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  Variant v = join(g.variant(), h.variant());
  return element_of(
      concatenate(with_variant(g.picture, v), with_variant(h.picture, v)));
}

GroupElement inverse(const GroupElement& g) { return {invert(g.picture)}; }

GroupElement power(const GroupElement& g, int n) {
  GroupElement base = n < 0 ? inverse(g) : g;
  GroupElement r = identity_element(g.variant());
  for (int i = 0; i < std::abs(n); ++i) r = multiply(r, base);
  return r;
}

bool is_identity(const GroupElement& g) { return reduce(g.picture).size() == 0; }

bool same_element(const GroupElement& g, const GroupElement& h) {
  Variant v = join(g.variant(), h.variant());
  return canonical_serialize(reduce(with_variant(g.picture, v))) ==
         canonical_serialize(reduce(with_variant(h.picture, v)));
}

// --- tree pairs on addresses ---------------------------------------------------------

TreePair reduce_tree_pair(const TreePair& tp) {
  CaretSet range(tp.range.begin(), tp.range.end());
  CaretSet domain(tp.domain.begin(), tp.domain.end());
  std::vector<int> perm = tp.perm;
  auto sibling_pair = [](const std::string& a, const std::string& b) {
    return !a.empty() && a.size() == b.size() && a.back() == '0' && b.back() == '1' &&
           a.compare(0, a.size() - 1, b, 0, b.size() - 1) == 0;
  };
  for (bool changed = true; changed;) {
    changed = false;
    auto lr = leaves_of(range);
    auto ld = leaves_of(domain);
    for (std::size_t i = 0; i + 1 < lr.size(); ++i) {
      int j = perm[i];
      if (perm[i + 1] != j + 1) continue;
      if (!sibling_pair(lr[i], lr[i + 1]) || !sibling_pair(ld[j], ld[j + 1])) continue;
      range.erase(lr[i].substr(0, lr[i].size() - 1));
      domain.erase(ld[j].substr(0, ld[j].size() - 1));
      perm.erase(perm.begin() + static_cast<long>(i) + 1);
      for (int& q : perm)
        if (q > j) --q;
      changed = true;
      break;
    }
  }
  return {{domain.begin(), domain.end()}, {range.begin(), range.end()}, perm};
}

TreePair compose_tree_pairs(const TreePair& g, const TreePair& h) {
  CaretSet gd(g.domain.begin(), g.domain.end()), gr(g.range.begin(), g.range.end());
  CaretSet hd(h.domain.begin(), h.domain.end()), hr(h.range.begin(), h.range.end());
  CaretSet s = gd;
  s.insert(hr.begin(), hr.end());
  auto subtree = [&](const std::string& root) {
    std::vector<std::string> rel;
    for (auto it = s.lower_bound(root); it != s.end() && it->compare(0, root.size(), root) == 0; ++it)
      rel.push_back(it->substr(root.size()));
    return rel;
  };
  auto gdl = leaves_of(gd), grl = leaves_of(gr), hdl = leaves_of(hd), hrl = leaves_of(hr);
  // Refine g so that its domain is s; new range leaf -> leaf of s.
  CaretSet new_range = gr;
  std::map<std::string, std::string> range_to_s;
  for (std::size_t r = 0; r < grl.size(); ++r) {
    const std::string& below = gdl[g.perm[r]];
    CaretSet rel;
    for (auto& q : subtree(below)) {
      rel.insert(q);
      new_range.insert(grl[r] + q);
    }
    std::vector<std::string> ql;
    leaves_below(rel, "", &ql);
    for (auto& q : ql) range_to_s[grl[r] + q] = below + q;
  }
  // Refine h so that its range is s; leaf of s -> new domain leaf.
  CaretSet new_domain = hd;
  std::map<std::string, std::string> s_to_domain;
  for (std::size_t r = 0; r < hrl.size(); ++r) {
    const std::string& above = hrl[r];
    const std::string& target = hdl[h.perm[r]];
    CaretSet rel;
    for (auto& q : subtree(above)) {
      rel.insert(q);
      new_domain.insert(target + q);
    }
    std::vector<std::string> ql;
    leaves_below(rel, "", &ql);
    for (auto& q : ql) s_to_domain[above + q] = target + q;
  }
  auto nrl = leaves_of(new_range);
  auto ndl = leaves_of(new_domain);
  std::map<std::string, int> domain_index;
  for (std::size_t i = 0; i < ndl.size(); ++i) domain_index[ndl[i]] = static_cast<int>(i);
  TreePair out{{new_domain.begin(), new_domain.end()}, {new_range.begin(), new_range.end()}, {}};
  for (auto& leaf : nrl) out.perm.push_back(domain_index.at(s_to_domain.at(range_to_s.at(leaf))));
  return reduce_tree_pair(out);
}

// --- grid trees -------------------------------------------------------------------------

std::vector<std::string> grid_carets(int m, int n) {
  check_depth(m);
  check_depth(n);
  std::vector<std::string> c{""};
  for (int i = 1; i <= m; ++i) c.push_back(std::string(i, '0'));
  for (int j = 1; j <= n; ++j) c.push_back(std::string(j, '1'));
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<std::string> full_carets(int m) {
  check_depth(m);
  std::vector<std::string> c;
  for (int len = 0; len < m; ++len)
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string a;
      for (int i = len - 1; i >= 0; --i) a += (bits >> i & 1) ? '1' : '0';
      c.push_back(a);
    }
  std::sort(c.begin(), c.end());
  return c;
}

Vertex grid_tree(int m, int n) { return tree_vertex(grid_carets(m, n)); }

Vertex grid_tree_hat(int m, int n) {
  auto c = grid_carets(m, n);
  if (n < 1) fail(ErrorCode::kInvalidInput, "the extra caret at 10 needs n >= 1");
  c.push_back("10");
  return tree_vertex(c);
}

Vertex full_tree(int m, Variant variant) { return tree_vertex(full_carets(m), variant); }

Vertex act(const GroupElement& g, const Vertex& v) {
  Variant var = join(g.variant(), v.variant());
  Picture gp = with_variant(g.picture, var);
  Picture vp = with_variant(v.picture(), var);
  if (!(gp.presentation() == vp.presentation()) || gp.bottom() != vp.top())
    fail(ErrorCode::kMismatch, "element and vertex have different base words");
  return vertex_of(concatenate(gp, vp));
}

// --- words ----------------------------------------------------------------------------------

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  GroupElement parse() {
    GroupElement g = product();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return g;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::kInvalidInput, "element word, position " + std::to_string(i_ + 1) + ": " + what);
  }

  void skip() {
    while (i_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[i_])) || s_[i_] == '*' ||
                              s_[i_] == '.'))
      ++i_;
  }

  bool at(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  int integer() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    std::size_t b = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_ || i_ - b > 6) error("expected a number");
    int v = std::stoi(std::string(s_.substr(b, i_ - b)));
    return neg ? -v : v;
  }

  GroupElement product() {
    GroupElement g = identity_element(Variant::kPlanar);
    bool any = false;
    while (true) {
      skip();
      if (i_ == s_.size() || s_[i_] == ',' || s_[i_] == ']' || s_[i_] == ')') break;
      g = multiply(g, factor());
      any = true;
    }
    if (!any && i_ < s_.size() && s_[i_] != ')') error("empty product");
    return g;
  }

  GroupElement factor() {
    GroupElement a = atom();
    if (at('^')) {
      ++i_;
      int n = integer();
      if (std::abs(n) > 4096) error("exponent too large");
      a = power(a, n);
    }
    return a;
  }

  GroupElement atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end");
    char c = s_[i_];
    if (c == '[') {
      ++i_;
      GroupElement a = product();
      if (!at(',')) error("expected ',' in commutator");
      ++i_;
      GroupElement b = product();
      if (!at(']')) error("expected ']'");
      ++i_;
      return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
    }
    if (c == '(') {
      ++i_;
      GroupElement a = product();
      if (!at(')')) error("expected ')'");
      ++i_;
      return a;
    }
    if (c == 'x') {
      ++i_;
      std::size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == b) error("expected generator index after 'x'");
      std::string idx(s_.substr(b, i_ - b));
      if (idx != "0" && idx != "1") error("only x0 and x1 are generators");
      return f_generator(idx[0] - '0');
    }
    if (s_.substr(i_, 2) == "pi") {
      i_ += 2;
      std::size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ == b || i_ - b > 2) error("expected rotation index after 'pi'");
      return t_rotation(std::stoi(std::string(s_.substr(b, i_ - b))));
    }
    if (c == 'e' || c == '1') {
      ++i_;
      return identity_element(Variant::kPlanar);
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

GroupElement parse_element(std::string_view word) { return WordParser(word).parse(); }

bool check_relation(std::string_view word) { return is_identity(parse_element(word)); }

bool link_condition_check(int m, int n) {
  if (m < 1 || n < 1) fail(ErrorCode::kInvalidInput, "link condition needs m, n >= 1");
  check_depth(m + 1);
  check_depth(n + 1);
  const std::string a1 = grid_tree(m, n - 1).key(), b1 = grid_tree(m, n + 1).key();
  const std::string a2 = grid_tree(m - 1, n).key(), b2 = grid_tree(m + 1, n).key();
  Vertex centre = grid_tree(m, n);
  std::vector<Vertex> star = neighbors(centre);
  star.push_back(centre);
  for (const Vertex& s : star)
    for (const Cube& c : cubes_at(s, 2)) {
      if (c.dimension() != 2) continue;
      std::set<std::string> corners;
      for (unsigned mask = 0; mask < 4; ++mask) corners.insert(c.corner(mask).key());
      if ((corners.count(a1) && corners.count(b1)) || (corners.count(a2) && corners.count(b2)))
        return false;
    }
  return true;
}

// --- random elements ---------------------------------------------------------------------------

namespace {

std::vector<std::string> random_carets(std::mt19937_64& rng, int leaves) {
  CaretSet s;
  std::vector<std::string> lv{""};
  for (int i = 1; i < leaves; ++i) {
    std::size_t k = rng() % lv.size();
    std::string a = lv[k];
    s.insert(a);
    lv.erase(lv.begin() + static_cast<long>(k));
    lv.push_back(a + "0");
    lv.push_back(a + "1");
  }
  return {s.begin(), s.end()};
}

}  // namespace

TreePair random_tree_pair(std::mt19937_64& rng, int leaves, Variant variant) {
  if (leaves < 1) fail(ErrorCode::kInvalidInput, "a tree has at least one leaf");
  TreePair tp{random_carets(rng, leaves), random_carets(rng, leaves), {}};
  tp.perm.resize(leaves);
  for (int i = 0; i < leaves; ++i) tp.perm[i] = i;
  if (variant == Variant::kCyclic) {
    int shift = static_cast<int>(rng() % leaves);
    for (int i = 0; i < leaves; ++i) tp.perm[i] = (i + shift) % leaves;
  } else if (variant == Variant::kBraided) {
    std::shuffle(tp.perm.begin(), tp.perm.end(), rng);
  }
  return tp;
}

GroupElement random_element(std::mt19937_64& rng, int max_leaves, Variant variant) {
  int leaves = 1 + static_cast<int>(rng() % std::max(1, max_leaves));
  return element_of(tree_pair_picture(random_tree_pair(rng, leaves, variant), variant));
}

}  // namespace diagcx
