#pragma once

// Semigroup pictures: transistors joined by labelled wires inside a frame,
// stored purely combinatorially as a port matching.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagcx/error.hpp"

namespace diagcx {

using Word = std::string;

inline constexpr std::size_t kMaxWordLength = std::size_t{1} << 16;
inline constexpr std::size_t kMaxTransistors = std::size_t{1} << 20;

struct Relation {
  Word lhs;
  Word rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// A finite semigroup presentation <alphabet | relations>. Symbols are single
/// characters; relations are never trivial (lhs != rhs).
class Presentation {
 public:
  Presentation(std::string alphabet, std::vector<Relation> relations);

  /// <x | x = xx>, the presentation behind F, T and V.
  static std::shared_ptr<const Presentation> thompson();

  /// Parses "<symbols> ; <lhs>=<rhs>, ..." (spaces between symbols optional).
  static std::shared_ptr<const Presentation> parse(std::string_view text);

  const std::string& alphabet() const { return alphabet_; }
  const std::vector<Relation>& relations() const { return relations_; }
  bool has_symbol(char c) const;
  void check_word(const Word& w) const;
  bool is_thompson() const;
  std::string to_string() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::string alphabet_;
  std::vector<Relation> relations_;
};

enum class Variant : std::uint8_t { kPlanar = 0, kCyclic = 1, kBraided = 2 };

const char* variant_name(Variant v);
Variant parse_variant(std::string_view name);

/// Smallest variant containing both (planar ⊂ cyclic ⊂ braided).
inline Variant join(Variant a, Variant b) { return a < b ? b : a; }

enum class Dir : std::uint8_t { kForward, kReverse };

inline Dir flip(Dir d) {
  return d == Dir::kForward ? Dir::kReverse : Dir::kForward;
}

/// Forward transistors read lhs on top and rhs on the bottom.
struct Transistor {
  int relation = 0;
  Dir dir = Dir::kForward;
  // Provenance; carried through every operation, ignored by comparisons.
  std::int64_t tag = -1;
};

/// One end of a wire. Sources are frame-top ports and transistor bottom ports;
/// sinks are frame-bottom ports and transistor top ports.
struct End {
  static constexpr int kFrame = -1;
  int node = kFrame;
  int port = 0;

  bool on_frame() const { return node == kFrame; }
  friend auto operator<=>(const End&, const End&) = default;
};

struct Dipole {
  int upper = 0;
  int lower = 0;
  friend bool operator==(const Dipole&, const Dipole&) = default;
};

class Picture {
 public:
  const Presentation& presentation() const { return *pres_; }
  const std::shared_ptr<const Presentation>& presentation_ptr() const {
    return pres_;
  }
  Variant variant() const { return variant_; }
  const Word& top() const { return top_; }
  Word bottom() const;

  int size() const { return static_cast<int>(transistors_.size()); }
  int top_size() const { return static_cast<int>(top_.size()); }
  int bottom_size() const { return static_cast<int>(bottom_in_.size()); }

  const Transistor& transistor(int t) const { return transistors_.at(t); }
  const Word& top_label(int t) const;
  const Word& bottom_label(int t) const;
  int top_arity(int t) const { return static_cast<int>(in_.at(t).size()); }
  int bottom_arity(int t) const { return static_cast<int>(out_.at(t).size()); }

  End feeding(int t, int j) const { return in_.at(t).at(j); }
  End fed_by(int t, int j) const { return out_.at(t).at(j); }
  End frame_top_sink(int i) const { return top_out_.at(i); }
  End frame_bottom_source(int i) const { return bottom_in_.at(i); }
  End sink_of(End source) const;
  End source_of(End sink) const;
  char label_of_source(End source) const;

  /// Distinct transistors wired directly into the top of t.
  std::vector<int> predecessors(int t) const;
  std::vector<int> topological_order() const;
  /// Length of the longest transistor chain ending at each transistor.
  std::vector<int> heights() const;
  bool is_maximal(int t) const;
  std::vector<int> maximal() const;
  /// Sorted ids of (-inf, t] in the transistor order.
  std::vector<int> downset(int t) const;
  bool precedes(int a, int b) const;

 private:
  friend struct PictureAccess;

  std::shared_ptr<const Presentation> pres_;
  Variant variant_ = Variant::kPlanar;
  Word top_;
  std::vector<Transistor> transistors_;
  std::vector<std::vector<End>> in_;   // in_[t][j]: source feeding t.top.j
  std::vector<std::vector<End>> out_;  // out_[t][j]: sink fed by t.bot.j
  std::vector<End> top_out_;           // sink fed by frame.top.i
  std::vector<End> bottom_in_;         // source feeding frame.bot.i
};

// --- construction -----------------------------------------------------------

Picture make_identity(std::shared_ptr<const Presentation> pres, const Word& w,
                      Variant variant);

/// Transistor-free picture wiring frame.top.i to frame.bot.perm[i].
Picture make_permutation(std::shared_ptr<const Presentation> pres,
                         const Word& top, const std::vector<int>& perm,
                         Variant variant);

/// Full structural check: port matching, labels, acyclicity, variant wiring.
void validate(const Picture& p);
bool admissible_wiring(const Picture& p);

/// Reinterprets p in another variant; narrowing checks the wiring.
Picture with_variant(const Picture& p, Variant v);
Picture with_tags(const Picture& p, std::int64_t tag);

// --- the dipole calculus ----------------------------------------------------

Picture concatenate(const Picture& upper, const Picture& lower);
Picture invert(const Picture& p);

std::vector<Dipole> find_dipoles(const Picture& p);
bool is_reduced(const Picture& p);
Picture remove_dipole(const Picture& p, Dipole d);
Picture reduce(const Picture& p);
int count_reduction_steps(const Picture& p);

/// Inserts a cancelling pair on the wires ending at `sinks` (left to right);
/// the upper transistor is (relation, dir), the lower its reverse.
Picture insert_dipole(const Picture& p, const std::vector<End>& sinks,
                      int relation, Dir dir);

bool equal_mod_dipoles(const Picture& a, const Picture& b);

// --- canonical forms --------------------------------------------------------

/// canonical index -> transistor id, by depth-first search from the frame top.
std::vector<int> canonical_order(const Picture& p);
Picture canonical_numbering(const Picture& p);
std::string canonical_serialize(const Picture& p);
bool isomorphic(const Picture& a, const Picture& b);

// --- growing and pruning at the frame bottom --------------------------------

/// A new transistor whose top ports consume the frame-bottom ports `ports`
/// (in order). Its bottom ports take the place of the consumed ones.
struct Attachment {
  int relation = 0;
  Dir dir = Dir::kForward;
  std::vector<int> ports;
};

/// Every wiring admissible for the variant; `usable` masks frame-bottom ports.
std::vector<Attachment> attachments(const Picture& p,
                                    const std::vector<bool>& usable);
std::vector<Attachment> attachments(const Picture& p);
bool attachment_creates_dipole(const Picture& p, const Attachment& a);
std::optional<Picture> try_attach(const Picture& p, const Attachment& a,
                                  std::int64_t tag = -1);
Picture attach(const Picture& p, const Attachment& a, std::int64_t tag = -1);

struct Removal {
  Picture picture;
  std::vector<int> origin;  // new frame-bottom index -> old index, -1 if new
};

/// Deletes a transistor whose bottom ports all reach the frame bottom.
Removal remove_maximal(const Picture& p, int t);

/// Keeps exactly the transistors in `keep` (must be downward closed).
Removal restrict_to(const Picture& p, const std::vector<bool>& keep);

// --- text forms ---------------------------------------------------------------

Picture parse_picture(std::string_view text);

/// Bracket shorthand for positive trees over <x | x = xx>: `.` leaf, `(L R)`.
Picture parse_tree(std::string_view text, Variant variant = Variant::kPlanar);
bool is_positive_tree(const Picture& p);
std::string tree_bracket(const Picture& p);

/// Binary address (over '0'/'1') of each transistor of a positive tree.
std::vector<std::string> tree_addresses(const Picture& p);

}  // namespace diagcx
