#include "diagcx/oracles.hpp"

#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace diagcx::oracle {

std::vector<std::vector<int>> bfs_distances(const BallGraph& g) {
  auto adj = g.adjacency();
  const int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::deque<int> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : adj[u])
        if (d[s][w] < 0) {
          d[s][w] = d[s][u] + 1;
          q.push_back(w);
        }
    }
  }
  return d;
}

int base_index(const BallGraph& g) {
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (g.vertices[i].size() == 0) return static_cast<int>(i);
  return -1;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> square_classes(const BallGraph& g, int* count) {
  const int m = static_cast<int>(g.edges.size());
  std::map<std::pair<int, int>, int> edge_id;
  for (int e = 0; e < m; ++e) edge_id[g.edges[e]] = e;
  auto id = [&](int a, int b) { return edge_id.at({std::min(a, b), std::max(a, b)}); };
  auto adj = g.adjacency();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  UnionFind uf(m);
  // 4-cycle a-b-c-d-a: edges ab~dc and bc~ad.
  const int n = static_cast<int>(g.vertices.size());
  for (int a = 0; a < n; ++a)
    for (int b : adj[a])
      for (int d : adj[a]) {
        if (d <= b) continue;
        for (int c : adj[b]) {
          if (c == a) continue;
          if (!std::binary_search(adj[d].begin(), adj[d].end(), c)) continue;
          uf.unite(id(a, b), id(d, c));
          uf.unite(id(b, c), id(a, d));
        }
      }
  std::map<int, int> dense;
  std::vector<int> cls(m);
  for (int e = 0; e < m; ++e) {
    int r = uf.find(e);
    auto it = dense.emplace(r, static_cast<int>(dense.size())).first;
    cls[e] = it->second;
  }
  *count = static_cast<int>(dense.size());
  return cls;
}

std::vector<bool> cut_off_by_class(const BallGraph& g, const std::vector<int>& edge_class,
                                   int cls) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> adj(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (edge_class[e] == cls) continue;
    adj[g.edges[e].first].push_back(g.edges[e].second);
    adj[g.edges[e].second].push_back(g.edges[e].first);
  }
  int s = base_index(g);
  std::vector<bool> cut(n, true);
  std::deque<int> q{s};
  cut[s] = false;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : adj[u])
      if (cut[w]) {
        cut[w] = false;
        q.push_back(w);
      }
  }
  return cut;
}

bool cut_by_class(const BallGraph& g, const std::vector<int>& edge_class, int cls,
                  int v) {
  return cut_off_by_class(g, edge_class, cls)[v];
}

std::vector<std::vector<bool>> brute_downsets(const Picture& p) {
  const int n = p.size();
  if (n > 20) fail(ErrorCode::kResourceLimit, "too many transistors for subset filter");
  std::vector<std::vector<bool>> r;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    bool closed = true;
    for (int t = 0; t < n && closed; ++t) {
      if (!(mask >> t & 1ul)) continue;
      for (int j = 0; j < p.top_arity(t) && closed; ++j) {
        End s = p.feeding(t, j);
        if (!s.on_frame() && !(mask >> s.node & 1ul)) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<bool> keep(n);
    for (int t = 0; t < n; ++t) keep[t] = mask >> t & 1ul;
    r.push_back(keep);
  }
  return r;
}

bool brute_embeds(const Picture& a, const Picture& b) {
  if (a.top() != b.top() || a.size() > b.size()) return false;
  std::vector<int> phi(a.size(), -1);
  std::vector<char> used(b.size(), 0);
  auto image_ok = [&](End sa, End sb) {
    if (sa.on_frame()) return sb == sa;
    if (phi[sa.node] < 0) return true;  // checked once that node is assigned
    return sb == End{phi[sa.node], sa.port};
  };
  std::function<bool(int)> rec = [&](int t) {
    if (t == a.size()) {
      // all wires between assigned transistors must match
      for (int x = 0; x < a.size(); ++x)
        for (int j = 0; j < a.top_arity(x); ++j)
          if (!image_ok(a.feeding(x, j), b.feeding(phi[x], j))) return false;
      return true;
    }
    for (int u = 0; u < b.size(); ++u) {
      if (used[u] || b.transistor(u).relation != a.transistor(t).relation ||
          b.transistor(u).dir != a.transistor(t).dir)
        continue;
      phi[t] = u;
      used[u] = 1;
      if (rec(t + 1)) return true;
      used[u] = 0;
      phi[t] = -1;
    }
    return false;
  };
  return rec(0);
}

std::map<std::string, double> x0_readdress(const std::map<std::string, double>& coeffs) {
  std::map<std::string, double> r{{"", 1.0}, {"0", 1.0}};
  for (const auto& [a, x] : coeffs) {
    if (a.empty() || a == "1") continue;
    if (a[0] == '0')
      r["00" + a.substr(1)] = x;
    else if (a.compare(0, 2, "10") == 0)
      r["01" + a.substr(2)] = x;
    else
      r["1" + a.substr(2)] = x;
  }
  return r;
}

double address_diff_squared(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b) {
  std::map<std::string, double> d = a;
  for (const auto& [k, x] : b) d[k] -= x;
  double s = 0;
  for (const auto& [k, x] : d) s += x * x;
  return s;
}

bool graph_leq(const std::vector<std::vector<int>>& dist, int base, int u, int v) {
  return dist[base][u] + dist[u][v] == dist[base][v];
}

}  // namespace diagcx::oracle
