#include <algorithm>
#include <map>
#include <sstream>

#include "diagcx/picture.hpp"
#include "draft.hpp"
#include "tree_text.hpp"

namespace diagcx {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

int parse_index(const std::string& s, const std::string& line) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < 1 || v > (1L << 30)) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    fail(ErrorCode::kInvalidInput, "bad number in line: " + line);
  }
}

struct PortRef {
  bool frame = false;
  int id = 0;       // transistor id as written (frame: unused)
  bool top = false; // frame.top / <tid>.top
  int port = 0;     // 0-based
};

PortRef parse_port(const std::string& s, const std::string& line) {
  auto a = s.find('.');
  auto b = s.rfind('.');
  if (a == std::string::npos || a == b)
    fail(ErrorCode::kInvalidInput, "bad port '" + s + "' in line: " + line);
  std::string head = s.substr(0, a), side = s.substr(a + 1, b - a - 1);
  PortRef r;
  if (side == "top")
    r.top = true;
  else if (side != "bot")
    fail(ErrorCode::kInvalidInput, "bad port side '" + side + "' in line: " + line);
  r.port = parse_index(s.substr(b + 1), line) - 1;
  if (head == "frame") {
    r.frame = true;
  } else {
    r.id = parse_index(head, line);
  }
  return r;
}

}  // namespace

Picture parse_picture(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  bool header = false;
  std::shared_ptr<const Presentation> pres;
  std::optional<Variant> variant;
  std::optional<Word> top;
  struct TLine { int id; int rel; Dir dir; };
  struct WLine { char label; PortRef src, dst; std::string line; };
  std::vector<TLine> tlines;
  std::vector<WLine> wlines;
  while (std::getline(in, raw)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "picture v1")
        fail(ErrorCode::kInvalidInput, "expected header 'picture v1'");
      header = true;
    } else if (starts_with(line, "presentation:")) {
      pres = Presentation::parse(line.substr(13));
    } else if (starts_with(line, "variant:")) {
      variant = parse_variant(trim(line.substr(8)));
    } else if (starts_with(line, "top:")) {
      top = trim(line.substr(4));
    } else if (starts_with(line, "transistor ")) {
      std::istringstream ls(line.substr(11));
      std::string id, rel, dir, extra;
      ls >> id >> rel >> dir;
      if (!starts_with(rel, "rel=") || !starts_with(dir, "dir=") || (ls >> extra))
        fail(ErrorCode::kInvalidInput, "bad transistor line: " + line);
      std::string d = dir.substr(4);
      if (d != "f" && d != "r") fail(ErrorCode::kInvalidInput, "bad dir in: " + line);
      tlines.push_back({parse_index(id, line), parse_index(rel.substr(4), line) - 1,
                        d == "f" ? Dir::kForward : Dir::kReverse});
    } else if (starts_with(line, "wire ")) {
      std::istringstream ls(line.substr(5));
      std::string label, src, arrow, dst, extra;
      ls >> label >> src >> arrow >> dst;
      if (label.size() != 1 || arrow != "->" || dst.empty() || (ls >> extra))
        fail(ErrorCode::kInvalidInput, "bad wire line: " + line);
      wlines.push_back({label[0], parse_port(src, line), parse_port(dst, line), line});
    } else {
      fail(ErrorCode::kInvalidInput, "unrecognized line: " + line);
    }
  }
  if (!header) fail(ErrorCode::kInvalidInput, "empty picture text");
  if (!pres || !variant || !top)
    fail(ErrorCode::kInvalidInput, "missing presentation, variant or top line");
  pres->check_word(*top);

  Draft d(pres, *variant, *top);
  std::map<int, int> ids;
  for (const TLine& t : tlines) {
    if (ids.count(t.id)) fail(ErrorCode::kInvalidInput, "duplicate transistor id");
    ids[t.id] = d.add(t.rel, t.dir, -1);
  }
  auto node = [&](const PortRef& r, const std::string& line) {
    auto it = ids.find(r.id);
    if (it == ids.end())
      fail(ErrorCode::kInvalidInput, "unknown transistor in line: " + line);
    return it->second;
  };
  std::vector<char> top_used(top->size(), 0);
  std::map<int, End> bottom;
  for (const WLine& w : wlines) {
    End src, dst;
    if (w.src.top != w.src.frame)
      fail(ErrorCode::kInvalidInput, "wire must start at frame.top or a bottom port: " + w.line);
    if (w.dst.top == w.dst.frame)
      fail(ErrorCode::kInvalidInput, "wire must end at frame.bot or a top port: " + w.line);
    if (w.src.frame) {
      if (w.src.port >= static_cast<int>(top->size()) || top_used[w.src.port]++)
        fail(ErrorCode::kInvalidInput, "frame top port misused: " + w.line);
      src = End{End::kFrame, w.src.port};
      if ((*top)[w.src.port] != w.label)
        fail(ErrorCode::kInvalidInput, "label disagrees with top word: " + w.line);
    } else {
      int t = node(w.src, w.line);
      if (w.src.port >= static_cast<int>(d.out[t].size()) ||
          d.out[t][w.src.port].node != -2)
        fail(ErrorCode::kInvalidInput, "bottom port misused: " + w.line);
      if (d.bottom_label(t)[w.src.port] != w.label)
        fail(ErrorCode::kInvalidInput, "label disagrees with transistor: " + w.line);
      src = End{t, w.src.port};
    }
    if (w.dst.frame) {
      if (bottom.count(w.dst.port))
        fail(ErrorCode::kInvalidInput, "frame bottom port misused: " + w.line);
      bottom[w.dst.port] = src;
      d.sink_slot(src) = End{End::kFrame, w.dst.port};
    } else {
      int t = node(w.dst, w.line);
      if (w.dst.port >= static_cast<int>(d.in[t].size()) ||
          d.in[t][w.dst.port].node != -2)
        fail(ErrorCode::kInvalidInput, "top port misused: " + w.line);
      if (d.top_label(t)[w.dst.port] != w.label)
        fail(ErrorCode::kInvalidInput, "label disagrees with transistor: " + w.line);
      d.link(src, End{t, w.dst.port});
    }
  }
  for (char u : top_used)
    if (!u) fail(ErrorCode::kInvalidInput, "unwired frame top port");
  int expect = 0;
  for (const auto& [i, src] : bottom) {
    if (i != expect++) fail(ErrorCode::kInvalidInput, "frame bottom ports not contiguous");
    d.bottom.push_back(src);
  }
  for (std::size_t t = 0; t < d.ts.size(); ++t)
    for (const auto& v : {d.in[t], d.out[t]})
      for (const End& e : v)
        if (e.node == -2) fail(ErrorCode::kInvalidInput, "unwired transistor port");
  d.origin.assign(d.bottom.size(), -1);
  Picture p = d.finish();
  validate(p);
  return p;
}

// --- trees ---------------------------------------------------------------------

namespace {

class TreeReader {
 public:
  TreeReader(std::string_view text, std::string_view leaves)
      : s_(text), leaves_(leaves) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  // Returns the parsed tree as a list of nodes in preorder.
  void read(Draft& d, End source, std::string* marks, int depth) {
    if (depth > 4096) fail(ErrorCode::kResourceLimit, "tree nested too deeply");
    skip();
    if (i_ >= s_.size()) fail(ErrorCode::kInvalidInput, "unexpected end of tree text");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      int t = d.add(0, Dir::kForward, -1);
      d.link(source, End{t, 0});
      read(d, End{t, 0}, marks, depth + 1);
      read(d, End{t, 1}, marks, depth + 1);
      skip();
      if (i_ >= s_.size() || s_[i_] != ')')
        fail(ErrorCode::kInvalidInput, "expected ')' in tree text");
      ++i_;
    } else if (leaves_.find(c) != std::string_view::npos) {
      ++i_;
      d.bottom.push_back(source);
      d.sink_slot(source) = End{End::kFrame, 0};
      if (marks) *marks += c;
    } else {
      fail(ErrorCode::kInvalidInput, std::string("unexpected '") + c + "' in tree text");
    }
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail(ErrorCode::kInvalidInput, "trailing text after tree");
  }

 private:
  std::string_view s_;
  std::string_view leaves_;
  std::size_t i_ = 0;
};

}  // namespace

Picture parse_marked_tree(std::string_view text, Variant variant,
                          std::string_view leaves, std::string* marks) {
  Draft d(Presentation::thompson(), variant, "x");
  TreeReader r(text, leaves);
  r.read(d, End{End::kFrame, 0}, marks, 0);
  r.finish();
  d.origin.assign(d.bottom.size(), -1);
  return d.finish();
}

Picture parse_tree(std::string_view text, Variant variant) {
  return parse_marked_tree(text, variant, ".", nullptr);
}

bool is_positive_tree(const Picture& p) {
  if (!p.presentation().is_thompson() || p.top() != "x") return false;
  for (int t = 0; t < p.size(); ++t)
    if (p.transistor(t).dir != Dir::kForward) return false;
  return true;
}

static void require_tree(const Picture& p) {
  if (!is_positive_tree(p))
    fail(ErrorCode::kPrecondition, "not a positive tree over <x | x = xx>");
}

std::string tree_bracket_marked(const Picture& p,
                                const std::vector<char>& leaf_mark) {
  require_tree(p);
  std::string s;
  // Explicit stack: deep vines must not exhaust the call stack.
  std::vector<std::pair<End, int>> stack{{p.frame_top_sink(0), 0}};
  while (!stack.empty()) {
    auto& [sink, state] = stack.back();
    if (sink.on_frame()) {
      s += leaf_mark.empty() ? '.' : leaf_mark.at(sink.port);
      stack.pop_back();
      continue;
    }
    int t = sink.node;
    if (state == 0) {
      s += '(';
      state = 1;
      stack.push_back({p.fed_by(t, 0), 0});
    } else if (state == 1) {
      s += ' ';
      state = 2;
      stack.push_back({p.fed_by(t, 1), 0});
    } else {
      s += ')';
      stack.pop_back();
    }
  }
  return s;
}

std::string tree_bracket(const Picture& p) { return tree_bracket_marked(p, {}); }

std::vector<std::string> tree_addresses(const Picture& p) {
  require_tree(p);
  std::vector<std::string> addr(p.size());
  std::vector<std::pair<End, std::string>> stack{{p.frame_top_sink(0), ""}};
  while (!stack.empty()) {
    auto [sink, a] = stack.back();
    stack.pop_back();
    if (sink.on_frame()) continue;
    addr[sink.node] = a;
    stack.push_back({p.fed_by(sink.node, 0), a + "0"});
    stack.push_back({p.fed_by(sink.node, 1), a + "1"});
  }
  return addr;
}

}  // namespace diagcx
