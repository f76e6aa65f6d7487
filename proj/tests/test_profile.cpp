#include <set>

#include "diagcx/profile.hpp"
#include "doctest.h"

using namespace diagcx;

namespace {

TruncatedProfile R(int d) { return canonical_profile(ProfileKind::kR, d); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("canonical profiles") {
  CHECK(format_profile(R(2)) == "(o (o (o s)))");
  CHECK(format_profile(canonical_profile(ProfileKind::kL, 1)) == "((s o) o)");
  CHECK(format_profile(canonical_profile(ProfileKind::kLR, 1)) == "((s o) (o s))");
  CHECK(format_profile(canonical_profile(ProfileKind::kInf, 1)) == "((s s) (s s))");
  CHECK(R(5).depth == 5);
  CHECK_THROWS_AS(canonical_profile(ProfileKind::kR, 0), Error);
  CHECK_THROWS_AS(canonical_profile(ProfileKind::kR, kMaxTreeDepth + 1), Error);
  for (const char* k : {"L", "R", "LR", "INF"})
    CHECK(std::string(profile_kind_name(parse_profile_kind(k))) == k);
  CHECK_THROWS_AS(parse_profile_kind("LL"), Error);
}

TEST_CASE("generators of F fix every canonical profile; rotations only INF") {
  for (const char* w : {"x0", "x1", "x0^-1", "x1^-1", "x0 x1^-1"})
    for (ProfileKind k : {ProfileKind::kL, ProfileKind::kR, ProfileKind::kLR, ProfileKind::kInf})
      CHECK(is_fixed_to_depth(parse_element(w), k, 12));
  for (const char* w : {"pi1", "pi2"}) {
    GroupElement g = parse_element(w);
    CHECK_FALSE(is_fixed_to_depth(g, ProfileKind::kL, 12));
    CHECK_FALSE(is_fixed_to_depth(g, ProfileKind::kR, 12));
    CHECK_FALSE(is_fixed_to_depth(g, ProfileKind::kLR, 12));
    CHECK(is_fixed_to_depth(g, ProfileKind::kInf, 12));
  }
}

TEST_CASE("acting cancels carets and lowers the depth") {
  TruncatedProfile moved = act_profile(parse_element("x0"), R(6));
  CHECK(moved.depth == 4);
  CHECK(profiles_equal_to_depth(moved, R(4), 4));
  CHECK(first_difference_depth(moved, R(4)) == -1);
  CHECK(code_of([] { act_profile(parse_element("x0^8"), R(2)); }) ==
        ErrorCode::kInsufficientDepth);
}

TEST_CASE("inverse undoes the action") {
  for (const char* w : {"x0", "x1 x0^-1", "pi1", "x1^2"})
    for (ProfileKind k : {ProfileKind::kL, ProfileKind::kR, ProfileKind::kLR, ProfileKind::kInf}) {
      GroupElement g = parse_element(w);
      TruncatedProfile p = canonical_profile(k, 12);
      TruncatedProfile back = act_profile(inverse(g), act_profile(g, p));
      CHECK(back.depth > 0);
      CHECK(profiles_equal_to_depth(back, p, back.depth));
    }
}

TEST_CASE("truncation") {
  TruncatedProfile t = truncate(R(6), 3);
  CHECK(t.depth == 3);
  CHECK(format_profile(t) == format_profile(R(3)));
  CHECK_THROWS_AS(truncate(R(2), 5), Error);
}

TEST_CASE("free markers match anything") {
  CHECK(profiles_equal_to_depth(parse_profile("(o (o ?))", 1), R(1), 1));
  CHECK_FALSE(profiles_equal_to_depth(parse_profile("(o (o o))", 1), R(1), 1));
  CHECK(first_difference_depth(parse_profile("(s (o s))", 1), R(1)) == 0);
  CHECK(first_difference_depth(parse_profile("(o (s s))", 1), R(1)) == 1);
}

TEST_CASE("parse and format round trip") {
  for (const char* s : {"(o s)", "((s ?) (o (s o)))", "(o (o (o s)))"})
    CHECK(format_profile(parse_profile(s, 1)) == s);
  CHECK_THROWS_AS(parse_profile("(o x)", 1), Error);
  CHECK_THROWS_AS(parse_profile("(o s", 1), Error);
}

TEST_CASE("validation and the sample profiles") {
  for (ProfileKind k : {ProfileKind::kL, ProfileKind::kR, ProfileKind::kLR, ProfileKind::kInf})
    CHECK(validate_profile(canonical_profile(k, 4)).ok);
  auto listed = sample_profile_names();
  std::set<std::string> names(listed.begin(), listed.end());
  CHECK(names == std::set<std::string>{"open-left", "stranded", "zipper"});
  CHECK(validate_profile(sample_profile("open-left", 6)).ok);
  CHECK(validate_profile(sample_profile("zipper", 6)).ok);
  ProfileReport r = validate_profile(sample_profile("stranded", 6));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.violation.empty());
  CHECK_FALSE(solid_extension_feasible(sample_profile("stranded", 6)));
  CHECK_THROWS_AS(sample_profile("nope", 4), Error);

  TruncatedProfile ol = sample_profile("open-left", 8);
  CHECK(first_difference_depth(act_profile(parse_element("x0"), ol), ol) == 0);
  TruncatedProfile z = sample_profile("zipper", 8);
  CHECK(first_difference_depth(act_profile(parse_element("x1"), z), z) == 2);
}

TEST_CASE("hyperplanes of a profile") {
  std::set<std::string> labels;
  for (const auto& h : hyperplanes_of_profile(R(2))) labels.insert(h.label());
  CHECK(labels == std::set<std::string>{"@ε", "@1", "@11"});
}
