#pragma once

// Mutable working copy of a Picture. Transistors are deleted by marking them
// dead; finish() compacts ids and rewires the frame bottom from `bottom`.

#include <cstdint>
#include <list>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diagcx/picture.hpp"

namespace diagcx {

inline std::int64_t pack(End e) {
  return (static_cast<std::int64_t>(e.node) << 32) ^
         static_cast<std::uint32_t>(e.port);
}

struct Draft {
  std::shared_ptr<const Presentation> pres;
  Variant variant = Variant::kPlanar;
  Word top;
  std::vector<Transistor> ts;
  std::vector<std::vector<End>> in;
  std::vector<std::vector<End>> out;
  std::vector<End> top_out;
  std::vector<char> dead;
  // Authoritative frame-bottom order and, per entry, its index before editing.
  std::vector<End> bottom;
  std::vector<int> origin;

  Draft(std::shared_ptr<const Presentation> p, Variant v, Word w);
  explicit Draft(const Picture& p);

  const Word& top_label(int t) const;
  const Word& bottom_label(int t) const;
  int add(int relation, Dir dir, std::int64_t tag);
  End& sink_slot(End source);
  End& source_slot_of_transistor(End sink);
  void link(End source, End sink);
  bool upper_of_dipole(int t, int* lower) const;
  void remove_dipole(int upper, int lower);

  Picture finish() const;
};

/// Ordered (planar), cyclically ordered (cyclic) or unordered (braided)
/// sequence of dangling sources, with O(1) lookup by source.
class CrossSection {
 public:
  CrossSection(const std::vector<End>& ends, const std::vector<int>& origins);

  int size() const { return static_cast<int>(items_.size()); }
  bool contains(End e) const { return where_.count(pack(e)) != 0; }

  /// Replaces `run` by `with`. For planar/cyclic variants the run must be
  /// consecutive (cyclically for cyclic); returns false otherwise.
  bool replace(const std::vector<End>& run,
               const std::vector<std::pair<End, int>>& with, Variant v);

  void materialize(std::vector<End>* ends, std::vector<int>* origins) const;

 private:
  using Item = std::pair<End, int>;
  std::list<Item> items_;
  std::unordered_map<std::int64_t, std::list<Item>::iterator> where_;
};

struct PictureAccess {
  static Picture from_draft(const Draft& d);
  static void load(const Picture& p, Draft* d);
};

}  // namespace diagcx
