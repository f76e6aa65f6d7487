#include "diagcx/picture.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "draft.hpp"

namespace diagcx {

// --- presentation -------------------------------------------------------------

Presentation::Presentation(std::string alphabet, std::vector<Relation> relations)
    : alphabet_(std::move(alphabet)), relations_(std::move(relations)) {
  if (alphabet_.empty()) fail(ErrorCode::kInvalidInput, "empty alphabet");
  std::string sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorCode::kInvalidInput, "repeated symbol in alphabet");
  for (char c : alphabet_) {
    if (c == ' ' || c == ';' || c == '=' || c == ',' || c == '(' || c == ')' ||
        c == '.')
      fail(ErrorCode::kInvalidInput, std::string("reserved symbol '") + c + "'");
  }
  for (const Relation& r : relations_) {
    if (r.lhs.empty() || r.rhs.empty())
      fail(ErrorCode::kInvalidInput, "relation with an empty side");
    if (r.lhs == r.rhs)
      fail(ErrorCode::kInvalidInput, "trivial relation " + r.lhs + "=" + r.rhs);
    check_word(r.lhs);
    check_word(r.rhs);
  }
}

std::shared_ptr<const Presentation> Presentation::thompson() {
  static const auto kThompson = std::make_shared<const Presentation>(
      "x", std::vector<Relation>{{"x", "xx"}});
  return kThompson;
}

static std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::shared_ptr<const Presentation> Presentation::parse(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    fail(ErrorCode::kInvalidInput, "presentation needs '<symbols> ; <relations>'");
  std::string alphabet;
  for (char c : text.substr(0, semi))
    if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') alphabet += c;
  std::vector<Relation> rels;
  std::string rest(text.substr(semi + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string r = trim(item);
    if (r.empty()) continue;
    auto eq = r.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kInvalidInput, "relation without '=': " + r);
    rels.push_back({trim(r.substr(0, eq)), trim(r.substr(eq + 1))});
  }
  auto p = std::make_shared<const Presentation>(alphabet, rels);
  if (p->is_thompson()) return thompson();
  return p;
}

bool Presentation::has_symbol(char c) const {
  return alphabet_.find(c) != std::string::npos;
}

void Presentation::check_word(const Word& w) const {
  if (w.empty()) fail(ErrorCode::kInvalidInput, "empty word");
  if (w.size() > kMaxWordLength)
    fail(ErrorCode::kResourceLimit, "word longer than 65536 symbols");
  for (char c : w)
    if (!has_symbol(c))
      fail(ErrorCode::kInvalidInput,
           std::string("symbol '") + c + "' outside the alphabet");
}

bool Presentation::is_thompson() const {
  return alphabet_ == "x" && relations_.size() == 1 &&
         relations_[0] == Relation{"x", "xx"};
}

std::string Presentation::to_string() const {
  std::string s = alphabet_ + " ;";
  for (std::size_t i = 0; i < relations_.size(); ++i)
    s += (i ? ", " : " ") + relations_[i].lhs + "=" + relations_[i].rhs;
  return s;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kPlanar: return "planar";
    case Variant::kCyclic: return "cyclic";
    case Variant::kBraided: return "braided";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "planar") return Variant::kPlanar;
  if (name == "cyclic") return Variant::kCyclic;
  if (name == "braided") return Variant::kBraided;
  fail(ErrorCode::kInvalidInput, "unknown variant '" + std::string(name) + "'");
}

// --- draft ----------------------------------------------------------------------

Draft::Draft(std::shared_ptr<const Presentation> p, Variant v, Word w)
    : pres(std::move(p)), variant(v), top(std::move(w)) {
  top_out.assign(top.size(), End{});
}

Draft::Draft(const Picture& p) { PictureAccess::load(p, this); }

const Word& Draft::top_label(int t) const {
  const Relation& r = pres->relations()[ts[t].relation];
  return ts[t].dir == Dir::kForward ? r.lhs : r.rhs;
}

const Word& Draft::bottom_label(int t) const {
  const Relation& r = pres->relations()[ts[t].relation];
  return ts[t].dir == Dir::kForward ? r.rhs : r.lhs;
}

int Draft::add(int relation, Dir dir, std::int64_t tag) {
  if (relation < 0 || relation >= static_cast<int>(pres->relations().size()))
    fail(ErrorCode::kInvalidInput, "relation index out of range");
  ts.push_back({relation, dir, tag});
  int t = static_cast<int>(ts.size()) - 1;
  in.emplace_back(top_label(t).size(), End{-2, 0});
  out.emplace_back(bottom_label(t).size(), End{-2, 0});
  dead.push_back(0);
  if (ts.size() > kMaxTransistors)
    fail(ErrorCode::kResourceLimit, "picture exceeds 2^20 transistors");
  return t;
}

End& Draft::sink_slot(End source) {
  return source.on_frame() ? top_out.at(source.port)
                           : out.at(source.node).at(source.port);
}

End& Draft::source_slot_of_transistor(End sink) {
  return in.at(sink.node).at(sink.port);
}

// Frame-bottom sinks are positional: their sources live in `bottom`, and the
// sink index is fixed up by finish().
void Draft::link(End source, End sink) {
  sink_slot(source) = sink;
  if (!sink.on_frame()) source_slot_of_transistor(sink) = source;
}

bool Draft::upper_of_dipole(int t, int* lower) const {
  const auto& o = out[t];
  if (o.empty() || o[0].on_frame()) return false;
  int l = o[0].node;
  if (dead[l] || in[l].size() != o.size()) return false;
  for (std::size_t j = 0; j < o.size(); ++j)
    if (o[j].node != l || o[j].port != static_cast<int>(j)) return false;
  if (top_label(t) != bottom_label(l)) return false;
  *lower = l;
  return true;
}

void Draft::remove_dipole(int upper, int lower) {
  // Sources above `upper` are glued, in order, to the sinks below `lower`.
  std::vector<End> sources = in[upper];
  std::vector<End> sinks = out[lower];
  std::vector<std::size_t> bottom_pos(sinks.size(), 0);
  bool any_frame = false;
  for (const End& k : sinks) any_frame |= k.on_frame();
  if (any_frame) {
    std::unordered_map<std::int64_t, std::size_t> pos;
    for (std::size_t i = 0; i < bottom.size(); ++i) pos[pack(bottom[i])] = i;
    for (std::size_t j = 0; j < sinks.size(); ++j)
      if (sinks[j].on_frame()) bottom_pos[j] = pos.at(pack(End{lower, int(j)}));
  }
  for (std::size_t j = 0; j < sources.size(); ++j) {
    if (sinks[j].on_frame()) {
      bottom[bottom_pos[j]] = sources[j];
      sink_slot(sources[j]) = End{End::kFrame, 0};
    } else {
      link(sources[j], sinks[j]);
    }
  }
  dead[upper] = dead[lower] = 1;
}

Picture Draft::finish() const { return PictureAccess::from_draft(*this); }

void PictureAccess::load(const Picture& p, Draft* d) {
  d->pres = p.pres_;
  d->variant = p.variant_;
  d->top = p.top_;
  d->ts = p.transistors_;
  d->in = p.in_;
  d->out = p.out_;
  d->top_out = p.top_out_;
  d->dead.assign(p.transistors_.size(), 0);
  d->bottom = p.bottom_in_;
  d->origin.resize(d->bottom.size());
  for (std::size_t i = 0; i < d->origin.size(); ++i) d->origin[i] = int(i);
}

Picture PictureAccess::from_draft(const Draft& d) {
  std::vector<int> id(d.ts.size(), -1);
  int n = 0;
  for (std::size_t t = 0; t < d.ts.size(); ++t)
    if (!d.dead[t]) id[t] = n++;
  auto remap = [&](End e) {
    if (e.on_frame()) return e;
    if (e.node < 0 || id[e.node] < 0)
      fail(ErrorCode::kPrecondition, "internal: dangling reference in picture");
    return End{id[e.node], e.port};
  };
  Picture p;
  p.pres_ = d.pres;
  p.variant_ = d.variant;
  p.top_ = d.top;
  p.transistors_.reserve(n);
  p.in_.reserve(n);
  p.out_.reserve(n);
  for (std::size_t t = 0; t < d.ts.size(); ++t) {
    if (d.dead[t]) continue;
    p.transistors_.push_back(d.ts[t]);
    std::vector<End> in = d.in[t];
    for (End& e : in) e = remap(e);
    std::vector<End> out = d.out[t];
    for (End& e : out) e = remap(e);
    p.in_.push_back(std::move(in));
    p.out_.push_back(std::move(out));
  }
  p.top_out_ = d.top_out;
  for (End& e : p.top_out_) e = remap(e);
  p.bottom_in_.resize(d.bottom.size());
  for (std::size_t i = 0; i < d.bottom.size(); ++i) {
    End s = remap(d.bottom[i]);
    p.bottom_in_[i] = s;
    End sink{End::kFrame, static_cast<int>(i)};
    if (s.on_frame())
      p.top_out_.at(s.port) = sink;
    else
      p.out_.at(s.node).at(s.port) = sink;
  }
  return p;
}

// --- cross sections --------------------------------------------------------------

CrossSection::CrossSection(const std::vector<End>& ends,
                           const std::vector<int>& origins) {
  for (std::size_t i = 0; i < ends.size(); ++i) {
    items_.emplace_back(ends[i], i < origins.size() ? origins[i] : -1);
    where_[pack(ends[i])] = std::prev(items_.end());
  }
}

bool CrossSection::replace(const std::vector<End>& run,
                           const std::vector<std::pair<End, int>>& with,
                           Variant v) {
  if (run.empty()) return false;
  std::vector<std::list<Item>::iterator> its;
  its.reserve(run.size());
  for (const End& e : run) {
    auto w = where_.find(pack(e));
    if (w == where_.end()) return false;
    its.push_back(w->second);
  }
  if (v != Variant::kBraided) {
    if (run.size() > items_.size()) return false;
    auto it = its[0];
    for (std::size_t j = 1; j < run.size(); ++j) {
      ++it;
      if (it == items_.end()) {
        if (v == Variant::kPlanar) return false;
        it = items_.begin();
      }
      if (it != its[j]) return false;
    }
  }
  auto at = its[0];
  for (const auto& item : with) {
    auto ins = items_.insert(at, item);
    where_[pack(item.first)] = ins;
  }
  for (std::size_t j = 0; j < its.size(); ++j) {
    where_.erase(pack(run[j]));
    items_.erase(its[j]);
  }
  return true;
}

void CrossSection::materialize(std::vector<End>* ends,
                               std::vector<int>* origins) const {
  ends->clear();
  origins->clear();
  for (const auto& [e, o] : items_) {
    ends->push_back(e);
    origins->push_back(o);
  }
}

// --- accessors ----------------------------------------------------------------------

Word Picture::bottom() const {
  Word w;
  w.reserve(bottom_in_.size());
  for (const End& s : bottom_in_) w += label_of_source(s);
  return w;
}

const Word& Picture::top_label(int t) const {
  const Relation& r = pres_->relations()[transistor(t).relation];
  return transistors_[t].dir == Dir::kForward ? r.lhs : r.rhs;
}

const Word& Picture::bottom_label(int t) const {
  const Relation& r = pres_->relations()[transistor(t).relation];
  return transistors_[t].dir == Dir::kForward ? r.rhs : r.lhs;
}

End Picture::sink_of(End source) const {
  return source.on_frame() ? top_out_.at(source.port)
                           : out_.at(source.node).at(source.port);
}

End Picture::source_of(End sink) const {
  return sink.on_frame() ? bottom_in_.at(sink.port)
                         : in_.at(sink.node).at(sink.port);
}

char Picture::label_of_source(End source) const {
  return source.on_frame() ? top_.at(source.port)
                           : bottom_label(source.node).at(source.port);
}

std::vector<int> Picture::predecessors(int t) const {
  std::vector<int> r;
  for (const End& e : in_.at(t))
    if (!e.on_frame()) r.push_back(e.node);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<int> Picture::topological_order() const {
  int n = size();
  std::vector<int> indeg(n, 0);
  for (int t = 0; t < n; ++t) indeg[t] = static_cast<int>(predecessors(t).size());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int t = 0; t < n; ++t)
    if (indeg[t] == 0) ready.push(t);
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> succ;
  while (!ready.empty()) {
    int t = ready.top();
    ready.pop();
    order.push_back(t);
    succ.clear();
    for (const End& e : out_[t])
      if (!e.on_frame()) succ.push_back(e.node);
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    for (int s : succ)
      if (--indeg[s] == 0) ready.push(s);
  }
  return order;  // shorter than size() iff the wiring has a cycle
}

std::vector<int> Picture::heights() const {
  std::vector<int> h(size(), 0);
  for (int t : topological_order())
    for (int p : predecessors(t)) h[t] = std::max(h[t], h[p] + 1);
  return h;
}

bool Picture::is_maximal(int t) const {
  for (const End& e : out_.at(t))
    if (!e.on_frame()) return false;
  return true;
}

std::vector<int> Picture::maximal() const {
  std::vector<int> r;
  for (int t = 0; t < size(); ++t)
    if (is_maximal(t)) r.push_back(t);
  return r;
}

std::vector<int> Picture::downset(int t) const {
  std::vector<char> seen(size(), 0);
  std::vector<int> stack{t};
  seen.at(t) = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const End& e : in_[u])
      if (!e.on_frame() && !seen[e.node]) {
        seen[e.node] = 1;
        stack.push_back(e.node);
      }
  }
  std::vector<int> r;
  for (int u = 0; u < size(); ++u)
    if (seen[u]) r.push_back(u);
  return r;
}

bool Picture::precedes(int a, int b) const {
  if (a == b) return false;
  auto d = downset(b);
  return std::binary_search(d.begin(), d.end(), a);
}

// --- construction --------------------------------------------------------------------

Picture make_identity(std::shared_ptr<const Presentation> pres, const Word& w,
                      Variant variant) {
  std::vector<int> perm(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) perm[i] = static_cast<int>(i);
  return make_permutation(std::move(pres), w, perm, variant);
}

Picture make_permutation(std::shared_ptr<const Presentation> pres,
                         const Word& top, const std::vector<int>& perm,
                         Variant variant) {
  pres->check_word(top);
  if (perm.size() != top.size())
    fail(ErrorCode::kInvalidInput, "permutation length differs from word");
  std::vector<char> hit(perm.size(), 0);
  for (int q : perm) {
    if (q < 0 || q >= static_cast<int>(perm.size()) || hit[q])
      fail(ErrorCode::kInvalidInput, "not a permutation");
    hit[q] = 1;
  }
  Draft d(pres, variant, top);
  d.bottom.resize(top.size());
  for (std::size_t i = 0; i < top.size(); ++i)
    d.bottom[perm[i]] = End{End::kFrame, static_cast<int>(i)};
  Picture p = d.finish();
  if (!admissible_wiring(p))
    fail(ErrorCode::kInvalidInput,
         std::string("permutation not admissible in the ") +
             variant_name(variant) + " variant");
  return p;
}

bool admissible_wiring(const Picture& p) {
  if (p.variant() == Variant::kBraided) return true;
  std::vector<End> start;
  for (int i = 0; i < p.top_size(); ++i) start.push_back(End{End::kFrame, i});
  CrossSection cs(start, {});
  auto order = p.topological_order();
  if (static_cast<int>(order.size()) != p.size()) return false;
  std::vector<End> run;
  std::vector<std::pair<End, int>> with;
  for (int t : order) {
    run.clear();
    with.clear();
    for (int j = 0; j < p.top_arity(t); ++j) run.push_back(p.feeding(t, j));
    for (int j = 0; j < p.bottom_arity(t); ++j) with.push_back({End{t, j}, -1});
    if (!cs.replace(run, with, p.variant())) return false;
  }
  std::vector<End> final_order;
  std::vector<int> ignored;
  cs.materialize(&final_order, &ignored);
  std::vector<End> bottom;
  for (int i = 0; i < p.bottom_size(); ++i)
    bottom.push_back(p.frame_bottom_source(i));
  if (p.variant() == Variant::kPlanar) return final_order == bottom;
  if (final_order.size() != bottom.size()) return false;
  if (bottom.empty()) return true;
  auto it = std::find(final_order.begin(), final_order.end(), bottom[0]);
  if (it == final_order.end()) return false;
  std::rotate(final_order.begin(), it, final_order.end());
  return final_order == bottom;
}

void validate(const Picture& p) {
  const Presentation& pres = p.presentation();
  pres.check_word(p.top());
  if (p.bottom_size() == 0) fail(ErrorCode::kInvalidInput, "empty bottom word");
  if (static_cast<std::size_t>(p.size()) > kMaxTransistors)
    fail(ErrorCode::kResourceLimit, "picture exceeds 2^20 transistors");
  int nrel = static_cast<int>(pres.relations().size());
  for (int t = 0; t < p.size(); ++t) {
    int r = p.transistor(t).relation;
    if (r < 0 || r >= nrel)
      fail(ErrorCode::kInvalidInput, "relation index out of range");
    if (p.top_arity(t) != static_cast<int>(p.top_label(t).size()) ||
        p.bottom_arity(t) != static_cast<int>(p.bottom_label(t).size()))
      fail(ErrorCode::kInvalidInput, "transistor arity disagrees with relation");
  }
  auto check_pair = [&](End source, End sink) {
    if (p.sink_of(source) != sink || p.source_of(sink) != source)
      fail(ErrorCode::kInvalidInput, "wire ends are not matched one to one");
  };
  for (int i = 0; i < p.top_size(); ++i) {
    End src{End::kFrame, i};
    check_pair(src, p.sink_of(src));
  }
  for (int t = 0; t < p.size(); ++t) {
    for (int j = 0; j < p.bottom_arity(t); ++j) check_pair({t, j}, p.fed_by(t, j));
    for (int j = 0; j < p.top_arity(t); ++j) {
      End sink{t, j};
      End src = p.feeding(t, j);
      check_pair(src, sink);
      if (p.label_of_source(src) != p.top_label(t)[j])
        fail(ErrorCode::kInvalidInput, "wire label disagrees with transistor top");
    }
  }
  for (int i = 0; i < p.bottom_size(); ++i) {
    End sink{End::kFrame, i};
    check_pair(p.source_of(sink), sink);
  }
  if (static_cast<int>(p.topological_order().size()) != p.size())
    fail(ErrorCode::kInvalidInput, "transistor order has a cycle");
  if (!admissible_wiring(p))
    fail(ErrorCode::kInvalidInput,
         std::string("wiring not admissible in the ") + variant_name(p.variant()) +
             " variant");
}

Picture with_variant(const Picture& p, Variant v) {
  if (p.variant() == v) return p;
  Draft d(p);
  d.variant = v;
  Picture q = d.finish();
  if (v < p.variant() && !admissible_wiring(q))
    fail(ErrorCode::kMismatch, std::string("picture is not ") + variant_name(v));
  return q;
}

Picture with_tags(const Picture& p, std::int64_t tag) {
  Draft d(p);
  for (auto& t : d.ts) t.tag = tag;
  return d.finish();
}

// --- calculus -----------------------------------------------------------------------------

Picture concatenate(const Picture& upper, const Picture& lower) {
  if (!(upper.presentation() == lower.presentation()))
    fail(ErrorCode::kMismatch, "presentations differ");
  if (upper.variant() != lower.variant())
    fail(ErrorCode::kMismatch, "variants differ");
  if (upper.bottom() != lower.top())
    fail(ErrorCode::kMismatch, "bottom word " + upper.bottom() +
                                   " differs from top word " + lower.top());
  Draft d(upper);
  const int off = upper.size();
  for (int t = 0; t < lower.size(); ++t) {
    const Transistor& tr = lower.transistor(t);
    d.add(tr.relation, tr.dir, tr.tag);
  }
  std::vector<End> upper_bottom = d.bottom;
  d.bottom.assign(lower.bottom_size(), End{});
  auto map_source = [&](End s) {
    return s.on_frame() ? upper_bottom.at(s.port) : End{s.node + off, s.port};
  };
  auto connect = [&](End s) {
    End k = lower.sink_of(s);
    End src = map_source(s);
    if (k.on_frame()) {
      d.bottom[k.port] = src;
      d.sink_slot(src) = k;
    } else {
      d.link(src, End{k.node + off, k.port});
    }
  };
  for (int i = 0; i < lower.top_size(); ++i) connect(End{End::kFrame, i});
  for (int t = 0; t < lower.size(); ++t)
    for (int j = 0; j < lower.bottom_arity(t); ++j) connect(End{t, j});
  d.origin.assign(d.bottom.size(), -1);
  return d.finish();
}

Picture invert(const Picture& p) {
  Draft d(p.presentation_ptr(), p.variant(), p.bottom());
  for (int t = 0; t < p.size(); ++t) {
    const Transistor& tr = p.transistor(t);
    d.add(tr.relation, flip(tr.dir), tr.tag);
  }
  d.bottom.assign(p.top_size(), End{});
  // A wire source -> sink of p becomes sink -> source with tops and bottoms
  // exchanged; node and port numbers carry over unchanged.
  auto add_wire = [&](End src, End sink) {
    End new_src = sink;  // old frame.bot.i -> frame.top.i, old T.top.j -> T.bot.j
    End new_sink = src;  // old frame.top.i -> frame.bot.i, old T.bot.j -> T.top.j
    if (new_sink.on_frame()) {
      d.bottom[new_sink.port] = new_src;
      d.sink_slot(new_src) = new_sink;
    } else {
      d.link(new_src, new_sink);
    }
  };
  for (int i = 0; i < p.top_size(); ++i)
    add_wire(End{End::kFrame, i}, p.frame_top_sink(i));
  for (int t = 0; t < p.size(); ++t)
    for (int j = 0; j < p.bottom_arity(t); ++j) add_wire(End{t, j}, p.fed_by(t, j));
  d.origin.assign(d.bottom.size(), -1);
  return d.finish();
}

static bool is_dipole_upper(const Picture& p, int t, int* lower) {
  int k = p.bottom_arity(t);
  if (k == 0) return false;
  End first = p.fed_by(t, 0);
  if (first.on_frame()) return false;
  int l = first.node;
  if (p.top_arity(l) != k) return false;
  for (int j = 0; j < k; ++j)
    if (p.fed_by(t, j) != End{l, j}) return false;
  if (p.top_label(t) != p.bottom_label(l)) return false;
  *lower = l;
  return true;
}

std::vector<Dipole> find_dipoles(const Picture& p) {
  std::vector<Dipole> r;
  for (int t : canonical_order(p)) {
    int l = -1;
    if (is_dipole_upper(p, t, &l)) r.push_back({t, l});
  }
  return r;
}

bool is_reduced(const Picture& p) {
  for (int t = 0; t < p.size(); ++t) {
    int l;
    if (is_dipole_upper(p, t, &l)) return false;
  }
  return true;
}

Picture remove_dipole(const Picture& p, Dipole dip) {
  int l = -1;
  if (dip.upper < 0 || dip.upper >= p.size() || !is_dipole_upper(p, dip.upper, &l) ||
      l != dip.lower)
    fail(ErrorCode::kPrecondition, "not a dipole");
  Draft d(p);
  d.remove_dipole(dip.upper, dip.lower);
  return d.finish();
}

static Picture reduce_draft(Draft& d, int* steps) {
  std::vector<int> work;
  for (int t = static_cast<int>(d.ts.size()) - 1; t >= 0; --t) work.push_back(t);
  while (!work.empty()) {
    int t = work.back();
    work.pop_back();
    if (d.dead[t]) continue;
    int l;
    if (!d.upper_of_dipole(t, &l)) continue;
    std::vector<End> above = d.in[t];
    d.remove_dipole(t, l);
    ++*steps;
    // Only transistors feeding the glued wires can become new upper halves.
    for (const End& e : above)
      if (!e.on_frame() && !d.dead[e.node]) work.push_back(e.node);
  }
  return d.finish();
}

Picture reduce(const Picture& p) {
  if (is_reduced(p)) return p;
  Draft d(p);
  int steps = 0;
  return reduce_draft(d, &steps);
}

int count_reduction_steps(const Picture& p) {
  Draft d(p);
  int steps = 0;
  reduce_draft(d, &steps);
  return steps;
}

Picture insert_dipole(const Picture& p, const std::vector<End>& sinks,
                      int relation, Dir dir) {
  const auto& rels = p.presentation().relations();
  if (relation < 0 || relation >= static_cast<int>(rels.size()))
    fail(ErrorCode::kInvalidInput, "relation index out of range");
  const Word& top = dir == Dir::kForward ? rels[relation].lhs : rels[relation].rhs;
  if (sinks.size() != top.size())
    fail(ErrorCode::kPrecondition, "wire count differs from relation side");
  std::vector<End> sources;
  for (std::size_t j = 0; j < sinks.size(); ++j) {
    End src = p.source_of(sinks[j]);
    if (p.label_of_source(src) != top[j])
      fail(ErrorCode::kPrecondition, "wire labels do not spell the relation side");
    sources.push_back(src);
  }
  {
    std::set<End> distinct(sinks.begin(), sinks.end());
    if (distinct.size() != sinks.size())
      fail(ErrorCode::kPrecondition, "repeated wire");
  }
  Draft d(p);
  int u = d.add(relation, dir, -1);
  int l = d.add(relation, flip(dir), -1);
  for (std::size_t j = 0; j < sinks.size(); ++j) {
    if (sinks[j].on_frame()) {
      d.bottom[sinks[j].port] = End{l, static_cast<int>(j)};
      d.out[l][j] = sinks[j];
    } else {
      d.link(End{l, static_cast<int>(j)}, sinks[j]);
    }
    d.link(sources[j], End{u, static_cast<int>(j)});
  }
  for (int m = 0; m < static_cast<int>(d.out[u].size()); ++m)
    d.link(End{u, m}, End{l, m});
  Picture q = d.finish();
  try {
    validate(q);
  } catch (const Error&) {
    fail(ErrorCode::kPrecondition, "inserted pair cannot straddle these wires");
  }
  return q;
}

bool equal_mod_dipoles(const Picture& a, const Picture& b) {
  if (!(a.presentation() == b.presentation()) || a.variant() != b.variant() ||
      a.top() != b.top() || a.bottom() != b.bottom())
    fail(ErrorCode::kMismatch, "frames differ");
  return canonical_serialize(reduce(a)) == canonical_serialize(reduce(b));
}

// --- canonical forms ---------------------------------------------------------------------------

std::vector<int> canonical_order(const Picture& p) {
  std::vector<int> order;
  order.reserve(p.size());
  std::vector<char> seen(p.size(), 0);
  std::vector<std::pair<int, int>> stack;
  auto visit = [&](End sink) {
    if (sink.on_frame() || seen[sink.node]) return;
    seen[sink.node] = 1;
    order.push_back(sink.node);
    stack.push_back({sink.node, 0});
    while (!stack.empty()) {
      auto& [t, port] = stack.back();
      if (port == p.bottom_arity(t)) {
        stack.pop_back();
        continue;
      }
      End k = p.fed_by(t, port++);
      if (!k.on_frame() && !seen[k.node]) {
        seen[k.node] = 1;
        order.push_back(k.node);
        stack.push_back({k.node, 0});
      }
    }
  };
  for (int i = 0; i < p.top_size(); ++i) visit(p.frame_top_sink(i));
  // Every transistor is reachable from the frame top in a valid picture; the
  // sweep below only matters for malformed input.
  for (int t = 0; t < p.size(); ++t)
    if (!seen[t]) visit(End{t, 0});
  return order;
}

Picture canonical_numbering(const Picture& p) {
  auto order = canonical_order(p);
  std::vector<int> rank(p.size());
  for (int i = 0; i < p.size(); ++i) rank[order[i]] = i;
  Draft src(p);
  Draft d(p.presentation_ptr(), p.variant(), p.top());
  for (int i = 0; i < p.size(); ++i) {
    int t = order[i];
    d.add(src.ts[t].relation, src.ts[t].dir, src.ts[t].tag);
  }
  auto re = [&](End e) { return e.on_frame() ? e : End{rank[e.node], e.port}; };
  for (int i = 0; i < p.size(); ++i) {
    int t = order[i];
    for (std::size_t j = 0; j < src.in[t].size(); ++j) d.in[i][j] = re(src.in[t][j]);
    for (std::size_t j = 0; j < src.out[t].size(); ++j) d.out[i][j] = re(src.out[t][j]);
  }
  for (std::size_t i = 0; i < src.top_out.size(); ++i) d.top_out[i] = re(src.top_out[i]);
  d.bottom.clear();
  for (const End& e : src.bottom) d.bottom.push_back(re(e));
  d.origin = src.origin;
  return d.finish();
}

static std::string end_name(End e, bool source, const std::vector<int>& rank) {
  std::string s;
  if (e.on_frame())
    s = source ? "frame.top." : "frame.bot.";
  else
    s = std::to_string(rank[e.node] + 1) + (source ? ".bot." : ".top.");
  return s + std::to_string(e.port + 1);
}

std::string canonical_serialize(const Picture& p) {
  auto order = canonical_order(p);
  std::vector<int> rank(p.size());
  for (int i = 0; i < p.size(); ++i) rank[order[i]] = i;
  std::string s = "picture v1\npresentation: ";
  s += p.presentation().to_string();
  s += "\nvariant: ";
  s += variant_name(p.variant());
  s += "\ntop: " + p.top() + "\n";
  for (int i = 0; i < p.size(); ++i) {
    const Transistor& tr = p.transistor(order[i]);
    s += "transistor " + std::to_string(i + 1) +
         " rel=" + std::to_string(tr.relation + 1) +
         (tr.dir == Dir::kForward ? " dir=f\n" : " dir=r\n");
  }
  auto wire = [&](End src) {
    s += "wire ";
    s += p.label_of_source(src);
    s += " " + end_name(src, true, rank) + " -> " +
         end_name(p.sink_of(src), false, rank) + "\n";
  };
  for (int i = 0; i < p.top_size(); ++i) wire(End{End::kFrame, i});
  for (int t : order)
    for (int j = 0; j < p.bottom_arity(t); ++j) wire(End{t, j});
  return s;
}

bool isomorphic(const Picture& a, const Picture& b) {
  return canonical_serialize(a) == canonical_serialize(b);
}

// --- attachments -------------------------------------------------------------------------------

std::vector<Attachment> attachments(const Picture& p,
                                    const std::vector<bool>& usable) {
  std::vector<Attachment> r;
  const int n = p.bottom_size();
  Word bottom = p.bottom();
  const auto& rels = p.presentation().relations();
  auto ok = [&](int port, char c) {
    return usable.at(port) && bottom[port] == c;
  };
  for (int rel = 0; rel < static_cast<int>(rels.size()); ++rel) {
    for (Dir dir : {Dir::kForward, Dir::kReverse}) {
      const Word& w = dir == Dir::kForward ? rels[rel].lhs : rels[rel].rhs;
      const int k = static_cast<int>(w.size());
      if (k > n) continue;
      switch (p.variant()) {
        case Variant::kPlanar:
        case Variant::kCyclic: {
          int starts = p.variant() == Variant::kPlanar ? n - k + 1 : n;
          for (int s = 0; s < starts; ++s) {
            Attachment a{rel, dir, {}};
            bool good = true;
            for (int j = 0; j < k && good; ++j) {
              int port = (s + j) % n;
              good = ok(port, w[j]);
              a.ports.push_back(port);
            }
            if (good) r.push_back(std::move(a));
          }
          break;
        }
        case Variant::kBraided: {
          std::vector<int> cur;
          std::vector<char> used(n, 0);
          std::function<void()> rec = [&]() {
            int j = static_cast<int>(cur.size());
            if (j == k) {
              r.push_back({rel, dir, cur});
              return;
            }
            for (int port = 0; port < n; ++port) {
              if (used[port] || !ok(port, w[j])) continue;
              used[port] = 1;
              cur.push_back(port);
              rec();
              cur.pop_back();
              used[port] = 0;
            }
          };
          rec();
          break;
        }
      }
    }
  }
  return r;
}

std::vector<Attachment> attachments(const Picture& p) {
  return attachments(p, std::vector<bool>(p.bottom_size(), true));
}

bool attachment_creates_dipole(const Picture& p, const Attachment& a) {
  if (a.ports.empty()) return false;
  End first = p.frame_bottom_source(a.ports[0]);
  if (first.on_frame()) return false;
  int t = first.node;
  if (p.bottom_arity(t) != static_cast<int>(a.ports.size())) return false;
  for (std::size_t j = 0; j < a.ports.size(); ++j)
    if (p.frame_bottom_source(a.ports[j]) != End{t, static_cast<int>(j)})
      return false;
  const Relation& r = p.presentation().relations().at(a.relation);
  const Word& new_bottom = a.dir == Dir::kForward ? r.rhs : r.lhs;
  return p.top_label(t) == new_bottom;
}

std::optional<Picture> try_attach(const Picture& p, const Attachment& a,
                                  std::int64_t tag) {
  const auto& rels = p.presentation().relations();
  if (a.relation < 0 || a.relation >= static_cast<int>(rels.size())) return {};
  const Word& w = a.dir == Dir::kForward ? rels[a.relation].lhs : rels[a.relation].rhs;
  if (a.ports.size() != w.size()) return {};
  std::vector<End> run;
  for (std::size_t j = 0; j < a.ports.size(); ++j) {
    int port = a.ports[j];
    if (port < 0 || port >= p.bottom_size()) return {};
    End src = p.frame_bottom_source(port);
    if (p.label_of_source(src) != w[j]) return {};
    run.push_back(src);
  }
  Draft d(p);
  int t = d.add(a.relation, a.dir, tag);
  CrossSection cs(d.bottom, d.origin);
  std::vector<std::pair<End, int>> with;
  for (std::size_t m = 0; m < d.out[t].size(); ++m)
    with.push_back({End{t, static_cast<int>(m)}, -1});
  if (!cs.replace(run, with, p.variant())) return {};
  for (std::size_t j = 0; j < run.size(); ++j)
    d.link(run[j], End{t, static_cast<int>(j)});
  for (auto& e : d.out[t]) e = End{End::kFrame, 0};
  cs.materialize(&d.bottom, &d.origin);
  return d.finish();
}

Picture attach(const Picture& p, const Attachment& a, std::int64_t tag) {
  auto q = try_attach(p, a, tag);
  if (!q) fail(ErrorCode::kPrecondition, "attachment not admissible");
  return *q;
}

static void remove_maximal_in(Draft& d, CrossSection& cs, int t) {
  std::vector<End> run;
  for (std::size_t j = 0; j < d.out[t].size(); ++j)
    run.push_back(End{t, static_cast<int>(j)});
  std::vector<std::pair<End, int>> with;
  for (const End& src : d.in[t]) with.push_back({src, -1});
  if (!cs.replace(run, with, d.variant))
    fail(ErrorCode::kPrecondition, "maximal transistor's wires are not adjacent");
  for (const End& src : d.in[t]) d.sink_slot(src) = End{End::kFrame, 0};
  d.dead[t] = 1;
}

Removal remove_maximal(const Picture& p, int t) {
  if (t < 0 || t >= p.size()) fail(ErrorCode::kPrecondition, "unknown transistor");
  if (!p.is_maximal(t)) fail(ErrorCode::kPrecondition, "transistor is not maximal");
  Draft d(p);
  CrossSection cs(d.bottom, d.origin);
  remove_maximal_in(d, cs, t);
  cs.materialize(&d.bottom, &d.origin);
  return {d.finish(), d.origin};
}

Removal restrict_to(const Picture& p, const std::vector<bool>& keep) {
  if (static_cast<int>(keep.size()) != p.size())
    fail(ErrorCode::kPrecondition, "mask size differs from transistor count");
  for (int t = 0; t < p.size(); ++t)
    if (keep[t])
      for (int q : p.predecessors(t))
        if (!keep[q]) fail(ErrorCode::kPrecondition, "kept set is not downward closed");
  Draft d(p);
  CrossSection cs(d.bottom, d.origin);
  auto order = p.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (!keep[*it]) remove_maximal_in(d, cs, *it);
  cs.materialize(&d.bottom, &d.origin);
  return {d.finish(), d.origin};
}

}  // namespace diagcx
