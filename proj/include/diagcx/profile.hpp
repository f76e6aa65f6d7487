#pragma once

// Truncated profiles: finite approximations of infinite reduced pictures,
// whose dangling wires are marked open (never attaches), solid (attaches)
// or free (undecided).

#include <string>
#include <string_view>
#include <vector>

#include "diagcx/hyperplane.hpp"
#include "diagcx/thompson.hpp"

namespace diagcx {

enum class Marker : char { kOpen = 'o', kSolid = 's', kFree = '?' };

struct TruncatedProfile {
  Picture picture;              // frame-bottom port i is dangling wire i
  std::vector<Marker> markers;  // one per frame-bottom port
  int depth = 0;                // faithful through this transistor height
};

enum class ProfileKind { kL, kR, kLR, kInf };

ProfileKind parse_profile_kind(std::string_view name);
const char* profile_kind_name(ProfileKind k);

TruncatedProfile canonical_profile(ProfileKind kind, int depth);

/// Hand-built profiles with merges or mixed markers:
///   "open-left"     root caret, left wire open, caret at 1 whose left wire
///                   is solid; both solid wires continue as right vines
///   "stranded"      two levels of carets, a merge of the middle leaves, outer
///                   leaves open: the merge has nowhere to go
///   "zipper"        two levels of carets, a merge of the middle leaves whose
///                   wire keeps merging with the left wires of a right vine
std::vector<std::string> sample_profile_names();
TruncatedProfile sample_profile(std::string_view name, int depth);

/// Tree profile from a bracket form with `o`, `s`, `?` leaves.
TruncatedProfile parse_profile(std::string_view text, int depth,
                               Variant variant = Variant::kPlanar);
/// Bracket form for tree profiles; the marked picture text otherwise.
std::string format_profile(const TruncatedProfile& tp);

struct ProfileReport {
  bool ok = true;
  std::string violation;
};

ProfileReport validate_profile(const TruncatedProfile& tp);
bool solid_extension_feasible(const TruncatedProfile& tp);

/// Keeps transistors of height <= d; wires into dropped ones become solid.
TruncatedProfile truncate(const TruncatedProfile& tp, int d);

/// Stacks g on tp, reduces, strips maximal transistors whose wires are all
/// open. Output depth drops by the number of cancelled pairs.
TruncatedProfile act_profile(const GroupElement& g, const TruncatedProfile& tp);

bool profiles_equal_to_depth(const TruncatedProfile& a, const TruncatedProfile& b, int d);
/// Smallest depth at which a and b differ, or -1 if they agree to min depth.
int first_difference_depth(const TruncatedProfile& a, const TruncatedProfile& b);

bool is_fixed_to_depth(const GroupElement& g, ProfileKind kind, int d);
/// Same comparison for an arbitrary profile.
bool is_fixed_to_depth(const GroupElement& g, const TruncatedProfile& tp);

std::vector<Hyperplane> hyperplanes_of_profile(const TruncatedProfile& tp);

}  // namespace diagcx
