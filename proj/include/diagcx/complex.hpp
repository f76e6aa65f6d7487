#pragma once

// Vertices and cubes of the diagram complex: reduced pictures whose bottom
// wires dangle, ordered by initial-subset containment.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagcx/picture.hpp"

namespace diagcx {

/// A reduced (w,*)-picture. The frame-bottom ports stand for the dangling
/// wire ends; their order is normalized per variant (kept for planar, rotated
/// for cyclic, sorted for braided) so that `picture` is a canonical lift.
class Vertex {
 public:
  const Picture& picture() const { return picture_; }
  const std::string& key() const { return key_; }
  Variant variant() const { return picture_.variant(); }
  const Word& word() const { return picture_.top(); }
  int size() const { return picture_.size(); }

  friend bool operator==(const Vertex& a, const Vertex& b) { return a.key_ == b.key_; }
  friend bool operator<(const Vertex& a, const Vertex& b) { return a.key_ < b.key_; }

 private:
  friend Vertex vertex_of(const Picture& p);
  Picture picture_;
  std::string key_;
};

/// Reduces p and cuts its bottom-frame wires.
Vertex vertex_of(const Picture& p);
Vertex base_vertex(std::shared_ptr<const Presentation> pres, const Word& w,
                   Variant variant);

/// Key of the vertex with the given picture, without reducing (p must be reduced).
std::string vertex_key(const Picture& p);

/// Transistor map v1 -> v2 realizing v1 as an initial subset of v2, if any.
std::optional<std::vector<int>> embedding(const Vertex& v1, const Vertex& v2);
bool vertex_leq(const Vertex& v1, const Vertex& v2);

/// All downward-closed transistor subsets, as membership masks.
std::vector<std::vector<bool>> downsets(const Picture& p,
                                        std::size_t limit = 1000000);
std::vector<Vertex> initial_subsets(const Vertex& v);

std::optional<Vertex> lub(const Vertex& v1, const Vertex& v2);

std::vector<Vertex> neighbors(const Vertex& v);

struct BallLimits {
  int max_radius = 6;
  std::size_t max_vertices = 1000000;
};

struct BallGraph {
  Word word;
  Variant variant = Variant::kPlanar;
  int radius = 0;
  std::vector<Vertex> vertices;          // sorted by key
  std::vector<int> depth;                // edge distance from the base vertex
  std::vector<std::pair<int, int>> edges; // index pairs, first < second, sorted

  int index_of(const std::string& key) const;  // -1 if absent
  std::vector<std::vector<int>> adjacency() const;
};

BallGraph ball(std::shared_ptr<const Presentation> pres, const Word& w, int radius,
               Variant variant, const BallLimits& limits = {});
std::string export_text(const BallGraph& g);
std::string export_dot(const BallGraph& g);

/// The cube spanned by the maximal vertex `top` and a set of its maximal
/// transistors drawn white. Corner `mask` keeps white[i] iff bit i is set.
class Cube {
 public:
  Cube(Picture top, std::vector<int> white);

  const Picture& top() const { return top_; }
  const std::vector<int>& white() const { return white_; }
  int dimension() const { return static_cast<int>(white_.size()); }
  const std::string& key() const { return key_; }

  Vertex corner(unsigned mask) const;
  Vertex max_vertex() const { return corner((1u << dimension()) - 1); }
  Vertex min_vertex() const { return corner(0); }

 private:
  Picture top_;
  std::vector<int> white_;
  std::string key_;
};

/// Every cube of dimension in [1, max_dim] having v as a corner.
std::vector<Cube> cubes_at(const Vertex& v, int max_dim = 8);

}  // namespace diagcx
