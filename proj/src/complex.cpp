#include "diagcx/complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>

#include "draft.hpp"

namespace diagcx {

namespace {

// Intrinsic rank of a wire source: frame-top ports first, then transistor
// bottom ports in canonical transistor order. Independent of the bottom order.
std::vector<std::pair<int, int>> source_ranks(const Picture& p,
                                              const std::vector<End>& sources) {
  auto order = canonical_order(p);
  std::vector<int> rank(p.size());
  for (int i = 0; i < p.size(); ++i) rank[order[i]] = i;
  std::vector<std::pair<int, int>> r;
  r.reserve(sources.size());
  for (const End& s : sources)
    r.push_back(s.on_frame() ? std::pair{-1, s.port} : std::pair{rank[s.node], s.port});
  return r;
}

Picture normalize_bottom(const Picture& p) {
  if (p.variant() == Variant::kPlanar || p.bottom_size() <= 1) return p;
  std::vector<End> bottom;
  for (int i = 0; i < p.bottom_size(); ++i) bottom.push_back(p.frame_bottom_source(i));
  auto ranks = source_ranks(p, bottom);
  std::vector<int> idx(bottom.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  if (p.variant() == Variant::kBraided) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ranks[a] < ranks[b]; });
  } else {
    auto first = std::min_element(idx.begin(), idx.end(),
                                  [&](int a, int b) { return ranks[a] < ranks[b]; });
    std::rotate(idx.begin(), first, idx.end());
  }
  Draft d(p);
  for (std::size_t i = 0; i < idx.size(); ++i) d.bottom[i] = bottom[idx[i]];
  return d.finish();
}

void require_compatible(const Vertex& a, const Vertex& b) {
  if (a.variant() != b.variant() || a.word() != b.word() ||
      !(a.picture().presentation() == b.picture().presentation()))
    fail(ErrorCode::kMismatch, "vertices live in different complexes");
}

}  // namespace

std::string vertex_key(const Picture& p) {
  static const char kVariantLetter[] = {'P', 'C', 'B'};
  auto order = canonical_order(p);
  std::vector<int> rank(p.size());
  for (int i = 0; i < p.size(); ++i) rank[order[i]] = i;
  std::string key;
  key += kVariantLetter[static_cast<int>(p.variant())];
  key += ':';
  key += p.top();
  key += ':';
  for (int t : order) {
    const Transistor& tr = p.transistor(t);
    key += std::to_string(tr.relation + 1);
    key += tr.dir == Dir::kForward ? 'f' : 'r';
    key += '(';
    for (int j = 0; j < p.top_arity(t); ++j) {
      End s = p.feeding(t, j);
      if (j) key += ',';
      if (s.on_frame())
        key += "t" + std::to_string(s.port + 1);
      else
        key += std::to_string(rank[s.node] + 1) + "." + std::to_string(s.port + 1);
    }
    key += ')';
  }
  return key;
}

Vertex vertex_of(const Picture& p) {
  Vertex v;
  v.picture_ = canonical_numbering(normalize_bottom(reduce(p)));
  v.key_ = vertex_key(v.picture_);
  return v;
}

Vertex base_vertex(std::shared_ptr<const Presentation> pres, const Word& w,
                   Variant variant) {
  return vertex_of(make_identity(std::move(pres), w, variant));
}

std::optional<std::vector<int>> embedding(const Vertex& v1, const Vertex& v2) {
  require_compatible(v1, v2);
  const Picture& a = v1.picture();
  const Picture& b = v2.picture();
  if (a.size() > b.size()) return std::nullopt;
  std::vector<int> phi(a.size(), -1);
  std::vector<char> used(b.size(), 0);
  auto image = [&](End s) { return s.on_frame() ? s : End{phi[s.node], s.port}; };
  for (int t : a.topological_order()) {
    End k = b.sink_of(image(a.feeding(t, 0)));
    if (k.on_frame() || k.port != 0) return std::nullopt;
    int u = k.node;
    if (used[u] || b.transistor(u).relation != a.transistor(t).relation ||
        b.transistor(u).dir != a.transistor(t).dir)
      return std::nullopt;
    for (int j = 1; j < a.top_arity(t); ++j)
      if (b.feeding(u, j) != image(a.feeding(t, j))) return std::nullopt;
    phi[t] = u;
    used[u] = 1;
  }
  return phi;
}

bool vertex_leq(const Vertex& v1, const Vertex& v2) {
  return embedding(v1, v2).has_value();
}

std::vector<std::vector<bool>> downsets(const Picture& p, std::size_t limit) {
  auto order = p.topological_order();
  std::vector<std::vector<int>> preds(p.size());
  for (int t = 0; t < p.size(); ++t) preds[t] = p.predecessors(t);
  std::vector<std::vector<bool>> out;
  std::vector<bool> cur(p.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      if (out.size() >= limit)
        fail(ErrorCode::kResourceLimit, "too many initial subsets");
      out.push_back(cur);
      return;
    }
    int t = order[i];
    rec(i + 1);
    bool ok = true;
    for (int q : preds[t]) ok = ok && cur[q];
    if (ok) {
      cur[t] = true;
      rec(i + 1);
      cur[t] = false;
    }
  };
  rec(0);
  return out;
}

std::vector<Vertex> initial_subsets(const Vertex& v) {
  std::vector<Vertex> r;
  for (const auto& keep : downsets(v.picture()))
    r.push_back(vertex_of(restrict_to(v.picture(), keep).picture));
  return r;
}

std::optional<Vertex> lub(const Vertex& v1, const Vertex& v2) {
  require_compatible(v1, v2);
  Picture u = v1.picture();
  const Picture& b = v2.picture();
  std::vector<int> phi(b.size(), -1);
  auto image = [&](End s) { return s.on_frame() ? s : End{phi[s.node], s.port}; };
  for (int t : b.topological_order()) {
    const int k = b.top_arity(t);
    std::vector<End> sinks;
    int on_frame = 0;
    for (int j = 0; j < k; ++j) {
      sinks.push_back(u.sink_of(image(b.feeding(t, j))));
      on_frame += sinks.back().on_frame();
    }
    if (on_frame == 0) {
      int w = sinks[0].node;
      if (u.transistor(w).relation != b.transistor(t).relation ||
          u.transistor(w).dir != b.transistor(t).dir)
        return std::nullopt;
      for (int j = 0; j < k; ++j)
        if (sinks[j] != End{w, j}) return std::nullopt;
      phi[t] = w;
    } else if (on_frame == k) {
      Attachment a{b.transistor(t).relation, b.transistor(t).dir, {}};
      for (const End& s : sinks) a.ports.push_back(s.port);
      auto next = try_attach(u, a, b.transistor(t).tag);
      if (!next) return std::nullopt;
      u = std::move(*next);
      phi[t] = u.size() - 1;
    } else {
      return std::nullopt;
    }
  }
  return vertex_of(u);
}

std::vector<Vertex> neighbors(const Vertex& v) {
  const Picture& p = v.picture();
  std::map<std::string, Vertex> found;
  for (int t : p.maximal()) {
    Vertex n = vertex_of(remove_maximal(p, t).picture);
    found.emplace(n.key(), std::move(n));
  }
  for (const Attachment& a : attachments(p)) {
    if (attachment_creates_dipole(p, a)) continue;
    auto q = try_attach(p, a);
    if (!q) continue;
    Vertex n = vertex_of(*q);
    found.emplace(n.key(), std::move(n));
  }
  std::vector<Vertex> r;
  for (auto& [k, n] : found) r.push_back(std::move(n));
  return r;
}

int BallGraph::index_of(const std::string& key) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), key,
                             [](const Vertex& v, const std::string& k) { return v.key() < k; });
  if (it == vertices.end() || it->key() != key) return -1;
  return static_cast<int>(it - vertices.begin());
}

std::vector<std::vector<int>> BallGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

BallGraph ball(std::shared_ptr<const Presentation> pres, const Word& w, int radius,
               Variant variant, const BallLimits& limits) {
  if (radius < 0) fail(ErrorCode::kInvalidInput, "negative radius");
  if (radius > limits.max_radius)
    fail(ErrorCode::kResourceLimit,
         "radius " + std::to_string(radius) + " exceeds the cap " +
             std::to_string(limits.max_radius));
  std::vector<Vertex> vs{base_vertex(std::move(pres), w, variant)};
  std::vector<int> dist{0};
  std::unordered_map<std::string, int> index{{vs[0].key(), 0}};
  std::set<std::pair<int, int>> edges;
  // Every edge adds or removes one transistor, so the distance from the base
  // vertex is the transistor count and vertices at the rim have no edges
  // among themselves.
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (dist[i] >= radius) continue;
    for (Vertex& n : neighbors(vs[i])) {
      auto it = index.find(n.key());
      int j;
      if (it == index.end()) {
        if (vs.size() >= limits.max_vertices)
          fail(ErrorCode::kResourceLimit, "ball exceeds the vertex cap");
        j = static_cast<int>(vs.size());
        index.emplace(n.key(), j);
        vs.push_back(std::move(n));
        dist.push_back(dist[i] + 1);
      } else {
        j = it->second;
      }
      edges.insert({std::min<int>(i, j), std::max<int>(i, j)});
    }
  }
  std::vector<int> perm(vs.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return vs[a].key() < vs[b].key(); });
  std::vector<int> where(vs.size());
  BallGraph g;
  g.word = w;
  g.variant = variant;
  g.radius = radius;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = static_cast<int>(i);
    g.vertices.push_back(vs[perm[i]]);
    g.depth.push_back(dist[perm[i]]);
  }
  for (auto [a, b] : edges) {
    int x = where[a], y = where[b];
    g.edges.push_back({std::min(x, y), std::max(x, y)});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::string export_text(const BallGraph& g) {
  std::string s;
  for (const Vertex& v : g.vertices) s += "vertex " + v.key() + "\n";
  for (auto [a, b] : g.edges)
    s += "edge " + g.vertices[a].key() + " " + g.vertices[b].key() + "\n";
  return s;
}

std::string export_dot(const BallGraph& g) {
  std::string s = "graph ball {\n";
  for (const Vertex& v : g.vertices) s += "  \"" + v.key() + "\";\n";
  for (auto [a, b] : g.edges)
    s += "  \"" + g.vertices[a].key() + "\" -- \"" + g.vertices[b].key() + "\";\n";
  s += "}\n";
  return s;
}

// --- cubes ------------------------------------------------------------------------

Cube::Cube(Picture top, std::vector<int> white) {
  for (int t : white)
    if (t < 0 || t >= top.size() || !top.is_maximal(t))
      fail(ErrorCode::kPrecondition, "white transistors must be maximal");
  auto order = canonical_order(top);
  std::vector<int> rank(top.size());
  for (int i = 0; i < top.size(); ++i) rank[order[i]] = i;
  for (int& t : white) t = rank[t];
  std::sort(white.begin(), white.end());
  if (std::adjacent_find(white.begin(), white.end()) != white.end())
    fail(ErrorCode::kPrecondition, "repeated white transistor");
  if (white.size() > 30) fail(ErrorCode::kResourceLimit, "cube dimension too large");
  top_ = canonical_numbering(reduce(top));
  if (top_.size() != top.size())
    fail(ErrorCode::kPrecondition, "cube vertex picture is not reduced");
  white_ = std::move(white);
  key_ = vertex_key(top_) + "|";
  for (std::size_t i = 0; i < white_.size(); ++i)
    key_ += (i ? "," : "") + std::to_string(white_[i] + 1);
}

Vertex Cube::corner(unsigned mask) const {
  std::vector<bool> keep(top_.size(), true);
  for (int i = 0; i < dimension(); ++i)
    if (!(mask >> i & 1u)) keep[white_[i]] = false;
  return vertex_of(restrict_to(top_, keep).picture);
}

std::vector<Cube> cubes_at(const Vertex& v, int max_dim) {
  const Picture& p = v.picture();
  auto maxes = p.maximal();
  if (maxes.size() > 20) fail(ErrorCode::kResourceLimit, "too many maximal transistors");
  std::map<std::string, Cube> found;
  const int n = p.bottom_size();
  for (unsigned amask = 0; amask < (1u << maxes.size()); ++amask) {
    std::vector<int> a;
    for (std::size_t i = 0; i < maxes.size(); ++i)
      if (amask >> i & 1u) a.push_back(maxes[i]);
    if (static_cast<int>(a.size()) > max_dim) continue;
    std::vector<bool> usable(n, true);
    for (int i = 0; i < n; ++i) {
      End s = p.frame_bottom_source(i);
      if (!s.on_frame() && std::find(a.begin(), a.end(), s.node) != a.end())
        usable[i] = false;
    }
    std::vector<Attachment> cand;
    for (auto& at : attachments(p, usable))
      if (!attachment_creates_dipole(p, at)) cand.push_back(std::move(at));
    std::vector<int> chosen;
    std::vector<char> taken(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      int dim = static_cast<int>(a.size() + chosen.size());
      if (i == cand.size()) {
        if (dim == 0) return;
        Picture d = p;
        std::vector<int> white = a;
        for (int c : chosen) {
          // ports of the original picture -> current positions via sources
          Attachment at = cand[c];
          for (int& port : at.ports) {
            End src = p.frame_bottom_source(port);
            for (int q = 0; q < d.bottom_size(); ++q)
              if (d.frame_bottom_source(q) == src) {
                port = q;
                break;
              }
          }
          auto next = try_attach(d, at);
          if (!next) return;
          d = std::move(*next);
          white.push_back(d.size() - 1);
        }
        Cube cube(d, white);
        found.emplace(cube.key(), std::move(cube));
        return;
      }
      rec(i + 1);
      if (dim >= max_dim) return;
      for (int port : cand[i].ports)
        if (taken[port]) return;
      for (int port : cand[i].ports) taken[port] = 1;
      chosen.push_back(static_cast<int>(i));
      rec(i + 1);
      chosen.pop_back();
      for (int port : cand[i].ports) taken[port] = 0;
    };
    rec(0);
  }
  std::vector<Cube> r;
  for (auto& [k, c] : found) r.push_back(std::move(c));
  return r;
}

}  // namespace diagcx
