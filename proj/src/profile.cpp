#include "diagcx/profile.hpp"

#include <algorithm>

#include "tree_text.hpp"

namespace diagcx {

namespace {

constexpr std::int64_t kFromElement = 1;
constexpr std::int64_t kFromProfile = 0;

Marker marker_of(char c) {
  switch (c) {
    case 'o': return Marker::kOpen;
    case 's': return Marker::kSolid;
    case '?': return Marker::kFree;
  }
  fail(ErrorCode::kInvalidInput, std::string("unknown marker '") + c + "'");
}

void check_shape(const TruncatedProfile& tp) {
  if (static_cast<int>(tp.markers.size()) != tp.picture.bottom_size())
    fail(ErrorCode::kInvalidInput, "one marker per dangling wire expected");
  if (tp.depth < 0) fail(ErrorCode::kInvalidInput, "negative profile depth");
}

// Markers listed by the intrinsic rank of their wire's source.
std::vector<std::pair<std::pair<int, int>, Marker>> ranked_markers(const TruncatedProfile& tp) {
  const Picture& p = tp.picture;
  auto order = canonical_order(p);
  std::vector<int> rank(p.size());
  for (int i = 0; i < p.size(); ++i) rank[order[i]] = i;
  std::vector<std::pair<std::pair<int, int>, Marker>> r;
  for (int i = 0; i < p.bottom_size(); ++i) {
    End s = p.frame_bottom_source(i);
    r.push_back({s.on_frame() ? std::pair{-1, s.port} : std::pair{rank[s.node], s.port},
                 tp.markers[i]});
  }
  std::sort(r.begin(), r.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

TruncatedProfile tree_profile(const std::vector<std::string>& carets,
                              const std::vector<std::string>& solid_leaves, int depth) {
  TruncatedProfile tp;
  tp.picture = tree_picture(carets);
  tp.depth = depth;
  for (const std::string& leaf : tree_leaves(carets))
    tp.markers.push_back(std::find(solid_leaves.begin(), solid_leaves.end(), leaf) !=
                                 solid_leaves.end()
                             ? Marker::kSolid
                             : Marker::kOpen);
  return tp;
}

// Grows a planar profile from a tree by attaching carets and merges to
// named wires; unnamed frontier wires default to solid.
class ProfileBuilder {
 public:
  explicit ProfileBuilder(const std::vector<std::string>& carets)
      : p_(tree_picture(carets)), wires_(tree_leaves(carets)) {}

  void caret(const std::string& w) {
    int i = at(w);
    p_ = attach(p_, Attachment{0, Dir::kForward, {i}});
    wires_[i] = w + "1";
    wires_.insert(wires_.begin() + i, w + "0");
  }
  void merge(const std::string& a, const std::string& b, const std::string& name) {
    int i = at(a);
    if (at(b) != i + 1) fail(ErrorCode::kPrecondition, "merged wires must be adjacent");
    p_ = attach(p_, Attachment{0, Dir::kReverse, {i, i + 1}});
    wires_.erase(wires_.begin() + i + 1);
    wires_[i] = name;
  }
  void open(const std::string& w) { open_.push_back(w); }

  TruncatedProfile done(int built_depth) const {
    TruncatedProfile tp;
    tp.picture = p_;
    tp.depth = built_depth;
    for (const auto& w : wires_)
      tp.markers.push_back(std::find(open_.begin(), open_.end(), w) != open_.end()
                               ? Marker::kOpen
                               : Marker::kSolid);
    return tp;
  }

 private:
  int at(const std::string& w) const {
    auto it = std::find(wires_.begin(), wires_.end(), w);
    if (it == wires_.end()) fail(ErrorCode::kPrecondition, "no dangling wire " + w);
    return static_cast<int>(it - wires_.begin());
  }

  Picture p_;
  std::vector<std::string> wires_;
  std::vector<std::string> open_;
};

// Right vine from wire w: carets down the right, left wires open.
void right_vine(ProfileBuilder& b, std::string w, int steps) {
  for (int k = 0; k < steps; ++k) {
    b.caret(w);
    b.open(w + "0");
    w += "1";
  }
}

}  // namespace

std::vector<std::string> sample_profile_names() { return {"open-left", "stranded", "zipper"}; }

TruncatedProfile sample_profile(std::string_view name, int depth) {
  if (depth < 1) fail(ErrorCode::kInvalidInput, "profile depth must be at least 1");
  if (depth > 64) fail(ErrorCode::kResourceLimit, "sample profiles stop at depth 64");
  const int steps = depth + 2;
  if (name == "open-left") {
    ProfileBuilder b({"", "1"});
    b.open("0");
    right_vine(b, "10", steps);
    right_vine(b, "11", steps);
    return truncate(b.done(steps), depth);
  }
  if (name == "stranded") {
    ProfileBuilder b({"", "0", "1"});
    b.merge("01", "10", "m");
    b.open("00");
    b.open("11");
    return b.done(depth);
  }
  if (name == "zipper") {
    ProfileBuilder b({"", "0", "1"});
    b.merge("01", "10", "m");
    right_vine(b, "00", steps);
    std::string chain = "m", w = "11";
    for (int k = 1; k <= steps; ++k) {
      b.caret(w);
      std::string next = "n" + std::to_string(k);
      b.merge(chain, w + "0", next);
      chain = next;
      w += "1";
    }
    return truncate(b.done(steps), depth);
  }
  fail(ErrorCode::kInvalidInput, "unknown sample profile '" + std::string(name) + "'");
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "L") return ProfileKind::kL;
  if (name == "R") return ProfileKind::kR;
  if (name == "LR" || name == "L-R") return ProfileKind::kLR;
  if (name == "INF" || name == "inf") return ProfileKind::kInf;
  fail(ErrorCode::kInvalidInput, "profile kind is one of L, R, LR, INF");
}

const char* profile_kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::kL: return "L";
    case ProfileKind::kR: return "R";
    case ProfileKind::kLR: return "LR";
    case ProfileKind::kInf: return "INF";
  }
  return "?";
}

TruncatedProfile canonical_profile(ProfileKind kind, int depth) {
  if (depth < 1) fail(ErrorCode::kInvalidInput, "profile depth must be at least 1");
  if (depth > kMaxTreeDepth)
    fail(ErrorCode::kResourceLimit, "profile depth exceeds " + std::to_string(kMaxTreeDepth));
  switch (kind) {
    case ProfileKind::kR:
      return tree_profile(grid_carets(0, depth), {std::string(depth + 1, '1')}, depth);
    case ProfileKind::kL:
      return tree_profile(grid_carets(depth, 0), {std::string(depth + 1, '0')}, depth);
    case ProfileKind::kLR:
      return tree_profile(grid_carets(depth, depth),
                          {std::string(depth + 1, '0'), std::string(depth + 1, '1')}, depth);
    case ProfileKind::kInf: {
      TruncatedProfile tp;
      tp.picture = tree_picture(full_carets(depth + 1));
      tp.markers.assign(tp.picture.bottom_size(), Marker::kSolid);
      tp.depth = depth;
      return tp;
    }
  }
  fail(ErrorCode::kInvalidInput, "unknown profile kind");
}

TruncatedProfile parse_profile(std::string_view text, int depth, Variant variant) {
  std::string marks;
  TruncatedProfile tp;
  tp.picture = parse_marked_tree(text, variant, "os?", &marks);
  for (char c : marks) tp.markers.push_back(marker_of(c));
  tp.depth = depth;
  return tp;
}

std::string format_profile(const TruncatedProfile& tp) {
  check_shape(tp);
  std::vector<char> marks;
  for (Marker m : tp.markers) marks.push_back(static_cast<char>(m));
  if (is_positive_tree(tp.picture)) return tree_bracket_marked(tp.picture, marks);
  std::string s = canonical_serialize(tp.picture) + "markers:";
  for (char c : marks) s += std::string(" ") + c;
  return s + "\n";
}

bool solid_extension_feasible(const TruncatedProfile& tp) {
  check_shape(tp);
  const Picture& p = tp.picture;
  std::vector<bool> usable(p.bottom_size());
  for (int i = 0; i < p.bottom_size(); ++i) usable[i] = tp.markers[i] != Marker::kOpen;
  auto options = attachments(p, usable);
  for (int i = 0; i < p.bottom_size(); ++i) {
    if (tp.markers[i] != Marker::kSolid) continue;
    bool ok = false;
    for (const Attachment& a : options) {
      if (std::find(a.ports.begin(), a.ports.end(), i) == a.ports.end()) continue;
      if (!attachment_creates_dipole(p, a) && try_attach(p, a)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

ProfileReport validate_profile(const TruncatedProfile& tp) {
  check_shape(tp);
  const Picture& p = tp.picture;
  if (!is_reduced(p)) return {false, "contains a dipole"};
  for (int t : p.maximal()) {
    bool marked = false;
    for (int j = 0; j < p.bottom_arity(t); ++j)
      marked |= tp.markers[p.fed_by(t, j).port] != Marker::kOpen;
    if (!marked)
      return {false, "transistor " + std::to_string(t + 1) + " is maximal (all wires open)"};
  }
  if (!solid_extension_feasible(tp))
    return {false, "a solid wire admits no attachment without forming a dipole"};
  return {};
}

TruncatedProfile truncate(const TruncatedProfile& tp, int d) {
  check_shape(tp);
  if (d > tp.depth)
    fail(ErrorCode::kInsufficientDepth, "cannot truncate a depth-" + std::to_string(tp.depth) +
                                            " profile to depth " + std::to_string(d));
  auto h = tp.picture.heights();
  std::vector<bool> keep(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) keep[t] = h[t] <= d;
  Removal r = restrict_to(tp.picture, keep);
  TruncatedProfile out;
  out.picture = std::move(r.picture);
  out.depth = d;
  for (int o : r.origin) out.markers.push_back(o >= 0 ? tp.markers[o] : Marker::kSolid);
  return out;
}

TruncatedProfile act_profile(const GroupElement& g, const TruncatedProfile& tp) {
  check_shape(tp);
  if (tp.depth < g.size())
    fail(ErrorCode::kInsufficientDepth,
         "profile depth " + std::to_string(tp.depth) + " is below the element's " +
             std::to_string(g.size()) + " transistors");
  Variant v = join(g.variant(), tp.picture.variant());
  Picture gp = with_tags(with_variant(g.picture, v), kFromElement);
  Picture pp = with_tags(with_variant(tp.picture, v), kFromProfile);
  if (!(gp.presentation() == pp.presentation()) || gp.bottom() != pp.top())
    fail(ErrorCode::kMismatch, "element and profile have different base words");
  Picture stacked = concatenate(gp, pp);
  // Frame-bottom indices survive reduction, so markers stay aligned.
  Picture r = reduce(stacked);
  const int cancelled = (stacked.size() - r.size()) / 2;
  std::vector<Marker> markers = tp.markers;
  for (bool stripped = true; stripped;) {
    stripped = false;
    for (int t : r.maximal()) {
      bool all_open = true;
      for (int j = 0; j < r.bottom_arity(t) && all_open; ++j)
        all_open = markers[r.fed_by(t, j).port] == Marker::kOpen;
      if (!all_open) continue;
      Removal rem = remove_maximal(r, t);
      std::vector<Marker> next;
      for (int o : rem.origin) next.push_back(o >= 0 ? markers[o] : Marker::kOpen);
      r = std::move(rem.picture);
      markers = std::move(next);
      stripped = true;
      break;
    }
  }
  // A surviving element transistor whose wires all dangle undecided could
  // still cancel against something below the truncation.
  for (int t : r.maximal()) {
    if (r.transistor(t).tag != kFromElement) continue;
    bool open = false;
    for (int j = 0; j < r.bottom_arity(t); ++j)
      open |= markers[r.fed_by(t, j).port] == Marker::kOpen;
    if (!open)
      fail(ErrorCode::kInsufficientDepth,
           "an element transistor meets the truncation frontier; deepen the profile");
  }
  TruncatedProfile out;
  out.picture = with_tags(r, -1);
  out.markers = std::move(markers);
  out.depth = tp.depth - cancelled;
  return out;
}

bool profiles_equal_to_depth(const TruncatedProfile& a, const TruncatedProfile& b, int d) {
  if (d < 0) fail(ErrorCode::kInvalidInput, "negative comparison depth");
  if (a.depth < d || b.depth < d)
    fail(ErrorCode::kInsufficientDepth, "profiles are not faithful to depth " + std::to_string(d));
  TruncatedProfile ta = truncate(a, d), tb = truncate(b, d);
  Variant v = join(ta.picture.variant(), tb.picture.variant());
  ta.picture = with_variant(ta.picture, v);
  tb.picture = with_variant(tb.picture, v);
  if (vertex_key(ta.picture) != vertex_key(tb.picture)) return false;
  auto ma = ranked_markers(ta), mb = ranked_markers(tb);
  if (ma.size() != mb.size()) return false;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    Marker x = ma[i].second, y = mb[i].second;
    if (x != y && x != Marker::kFree && y != Marker::kFree) return false;
  }
  return true;
}

int first_difference_depth(const TruncatedProfile& a, const TruncatedProfile& b) {
  int top = std::min(a.depth, b.depth);
  for (int d = 0; d <= top; ++d)
    if (!profiles_equal_to_depth(a, b, d)) return d;
  return -1;
}

bool is_fixed_to_depth(const GroupElement& g, const TruncatedProfile& tp) {
  if (tp.depth < g.size() + 1)
    fail(ErrorCode::kInsufficientDepth, "depth must exceed the element's transistor count");
  return profiles_equal_to_depth(act_profile(g, tp), tp, tp.depth - g.size());
}

bool is_fixed_to_depth(const GroupElement& g, ProfileKind kind, int d) {
  if (d < g.size() + 1)
    fail(ErrorCode::kInsufficientDepth, "depth must exceed the element's transistor count");
  return is_fixed_to_depth(g, canonical_profile(kind, d));
}

std::vector<Hyperplane> hyperplanes_of_profile(const TruncatedProfile& tp) {
  return hyperplanes_below(vertex_of(tp.picture));
}

}  // namespace diagcx
