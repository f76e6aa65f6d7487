// Command-line front end. Talks to the library only through diagcx.h.
// Exit status: 0 success or true, 1 false, 2 error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "diagcx/diagcx.h"

namespace {

struct Failure {
  std::string message;
};

void check(int rc) {
  if (rc != DCX_OK) throw Failure{dcx_last_error()};
}

// RAII for library handles and strings.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** put() { return &p; }
  T* get() const { return p; }
};
using PictureH = Handle<dcx_picture, dcx_picture_free>;
using VertexH = Handle<dcx_vertex, dcx_vertex_free>;
using ProfileH = Handle<dcx_profile, dcx_profile_free>;
using TreeH = Handle<dcx_ltree, dcx_ltree_free>;

std::string take(char* s) {
  std::string r = s ? s : "";
  dcx_free_string(s);
  return r;
}

// A file name, or the picture text itself (bracket shorthand or full format).
std::string source(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

void load(const std::string& arg, const std::string& variant, PictureH& p) {
  check(dcx_picture_parse(source(arg).c_str(), variant.c_str(), p.put()));
}

void load(const std::string& arg, const std::string& variant, VertexH& v) {
  PictureH p;
  load(arg, variant, p);
  check(dcx_vertex_of(p.get(), v.put()));
}

void print_picture(const dcx_picture* p) {
  char* s = nullptr;
  check(dcx_picture_format(p, &s));
  std::cout << take(s);
}

void print_vertex(const dcx_vertex* v) {
  char* s = nullptr;
  check(dcx_vertex_format(v, &s));
  std::string t = take(s);
  std::cout << t << (t.empty() || t.back() != '\n' ? "\n" : "");
}

int verdict(bool b) {
  std::cout << (b ? "true" : "false") << "\n";
  return b ? 0 : 1;
}

// Profile source for the profile verbs: --kind, --sample or an explicit bracket.
struct ProfileArgs {
  std::string kind, sample, bracket;
  int depth = 10;

  void add(CLI::App* c) {
    c->add_option("--kind", kind, "L, R, LR or INF");
    c->add_option("--sample", sample, "open-left, stranded or zipper");
    c->add_option("--profile", bracket, "marked bracket tree, leaves o/s/?");
    c->add_option("--depth", depth, "truncation depth")->check(CLI::PositiveNumber);
  }
  void build(ProfileH& p) const {
    int given = !kind.empty() + !sample.empty() + !bracket.empty();
    if (given != 1) throw Failure{"give exactly one of --kind, --sample, --profile"};
    if (!kind.empty()) check(dcx_profile_canonical(kind.c_str(), depth, p.put()));
    else if (!sample.empty()) check(dcx_profile_sample(sample.c_str(), depth, p.put()));
    else check(dcx_profile_parse(bracket.c_str(), depth, p.put()));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagcx: pictures, diagram complexes and Thompson group actions"};
  app.require_subcommand(1);
  std::string variant = "planar";
  app.add_option("--variant", variant, "planar, cyclic or braided (for bracket trees)");

  int status = 0;
  std::string a, b, word;

  auto* reduce = app.add_subcommand("reduce", "reduce a picture to normal form");
  reduce->add_option("picture", a)->required();
  reduce->callback([&] {
    PictureH p, r;
    load(a, variant, p);
    check(dcx_picture_reduce(p.get(), r.put()));
    print_picture(r.get());
  });

  auto* mul = app.add_subcommand("mul", "stack two pictures and reduce");
  mul->add_option("upper", a)->required();
  mul->add_option("lower", b)->required();
  mul->callback([&] {
    PictureH p, q, c, r;
    load(a, variant, p);
    load(b, variant, q);
    check(dcx_picture_concat(p.get(), q.get(), c.put()));
    check(dcx_picture_reduce(c.get(), r.put()));
    print_picture(r.get());
  });

  auto* inv = app.add_subcommand("inv", "mirror a picture");
  inv->add_option("picture", a)->required();
  inv->callback([&] {
    PictureH p, r;
    load(a, variant, p);
    check(dcx_picture_invert(p.get(), r.put()));
    print_picture(r.get());
  });

  auto* eq = app.add_subcommand("eq", "equal modulo dipoles?");
  eq->add_option("a", a)->required();
  eq->add_option("b", b)->required();
  eq->callback([&] {
    PictureH p, q;
    load(a, variant, p);
    load(b, variant, q);
    int r = 0;
    check(dcx_picture_equivalent(p.get(), q.get(), &r));
    status = verdict(r);
  });

  int radius = 2;
  std::string dot;
  auto* ballc = app.add_subcommand("ball", "vertices within a radius of the base vertex");
  ballc->add_option("--word", word, "base word")->default_val("x");
  ballc->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  ballc->add_option("--dot", dot, "write Graphviz output to this file");
  ballc->callback([&] {
    if (word.empty()) word = "x";
    char* s = nullptr;
    int nv = 0, ne = 0;
    check(dcx_ball(word.c_str(), radius, variant.c_str(), !dot.empty(), &s, &nv, &ne));
    std::string t = take(s);
    if (dot.empty()) {
      std::cout << t;
    } else {
      std::ofstream f(dot);
      if (!(f << t)) throw Failure{"cannot write " + dot};
    }
    std::cout << "vertices " << nv << " edges " << ne << "\n";
  });

  auto* dist = app.add_subcommand("dist", "edge distance between two vertices");
  dist->add_option("v1", a)->required();
  dist->add_option("v2", b)->required();
  dist->callback([&] {
    VertexH u, v;
    load(a, variant, u);
    load(b, variant, v);
    int d = 0;
    check(dcx_vertex_distance(u.get(), v.get(), &d));
    std::cout << d << "\n";
  });

  int max_dim = 8;
  auto* cubes = app.add_subcommand("cubes", "cubes having a vertex as a corner");
  cubes->add_option("--at", a, "vertex")->required();
  cubes->add_option("--max-dim", max_dim)->check(CLI::PositiveNumber);
  cubes->callback([&] {
    VertexH v;
    load(a, variant, v);
    char* s = nullptr;
    check(dcx_cubes_at(v.get(), max_dim, &s));
    std::cout << take(s);
  });

  auto* hyp = app.add_subcommand("hyp", "hyperplanes, named by their min vertex");
  hyp->require_subcommand(1);
  auto* hmin = hyp->add_subcommand("min", "hyperplanes separating a vertex from the base");
  hmin->add_option("vertex", a)->required();
  hmin->callback([&] {
    VertexH v;
    load(a, variant, v);
    char* s = nullptr;
    check(dcx_hyperplanes_below(v.get(), &s));
    std::cout << take(s);
  });
  auto pair_verb = [&](const char* name, const char* help, int (*f)(const dcx_vertex*,
                                                                      const dcx_vertex*, int*)) {
    auto* c = hyp->add_subcommand(name, help);
    c->add_option("first", a)->required();
    c->add_option("second", b)->required();
    c->callback([&, f] {
      VertexH u, v;
      load(a, variant, u);
      load(b, variant, v);
      int r = 0;
      check(f(u.get(), v.get(), &r));
      status = verdict(r);
    });
  };
  pair_verb("separates", "does hyperplane (min vertex) separate vertex from base?", dcx_separates);
  pair_verb("leq", "half-space order between two hyperplanes", dcx_halfspace_leq);
  pair_verb("meet", "do the two half-spaces intersect?", dcx_halfspaces_meet);

  auto* actc = app.add_subcommand("act", "act on a vertex by a group element");
  actc->add_option("--element", word, "word in x0, x1, pi<k>")->required();
  actc->add_option("--vertex", a)->required();
  actc->callback([&] {
    PictureH g;
    VertexH v, r;
    check(dcx_element_parse(word.c_str(), g.put()));
    load(a, variant, v);
    check(dcx_act(g.get(), v.get(), r.put()));
    print_vertex(r.get());
  });

  auto* rel = app.add_subcommand("relcheck", "does a word represent the identity?");
  rel->add_option("--word", word)->required();
  rel->callback([&] {
    int r = 0;
    check(dcx_relation_holds(word.c_str(), &r));
    status = verdict(r);
  });

  int m = 1, n = 1;
  auto* link = app.add_subcommand("linkcheck", "link conditions at a grid tree");
  link->add_option("--m", m)->required();
  link->add_option("--n", n)->required();
  link->callback([&] {
    int r = 0;
    check(dcx_link_condition(m, n, &r));
    status = verdict(r);
  });

  auto* prof = app.add_subcommand("profile", "truncated profiles");
  prof->require_subcommand(1);
  ProfileArgs pa;
  auto* pgen = prof->add_subcommand("gen", "print a profile");
  pa.add(pgen);
  pgen->callback([&] {
    ProfileH p;
    pa.build(p);
    char* s = nullptr;
    check(dcx_profile_format(p.get(), &s));
    std::string t = take(s);
    std::cout << t << (t.back() == '\n' ? "" : "\n");
  });
  auto* pcheck = prof->add_subcommand("check", "validate a profile");
  pa.add(pcheck);
  pcheck->callback([&] {
    ProfileH p;
    pa.build(p);
    int ok = 0;
    char* why = nullptr;
    check(dcx_profile_validate(p.get(), &ok, &why));
    std::string w = take(why);
    status = verdict(ok);
    if (!ok) std::cout << w << "\n";
  });
  auto* pact = prof->add_subcommand("act", "act on a profile");
  pa.add(pact);
  pact->add_option("--element", word)->required();
  pact->callback([&] {
    ProfileH p, r;
    PictureH g;
    pa.build(p);
    check(dcx_element_parse(word.c_str(), g.put()));
    check(dcx_profile_act(g.get(), p.get(), r.put()));
    char* s = nullptr;
    int depth = 0, diff = 0;
    check(dcx_profile_format(r.get(), &s));
    check(dcx_profile_depth(r.get(), &depth));
    check(dcx_profile_first_difference(r.get(), p.get(), &diff));
    std::string t = take(s);
    std::cout << t << (t.back() == '\n' ? "" : "\n") << "depth " << depth << "\n";
    if (diff < 0) std::cout << "agrees with the input to depth " << depth << "\n";
    else std::cout << "first differs from the input at depth " << diff << "\n";
  });
  auto* pfix = prof->add_subcommand("fixed", "is the profile fixed to depth?");
  pa.add(pfix);
  pfix->add_option("--element", word)->required();
  pfix->callback([&] {
    ProfileH p;
    PictureH g;
    pa.build(p);
    check(dcx_element_parse(word.c_str(), g.put()));
    int r = 0;
    check(dcx_profile_fixed(g.get(), p.get(), &r));
    status = verdict(r);
  });

  auto* emb = app.add_subcommand("embed", "the l2 embedding and labelled trees");
  emb->require_subcommand(1);
  auto* rho = emb->add_subcommand("rho", "hyperplane coefficients of a vertex");
  rho->add_option("vertex", a)->required();
  rho->callback([&] {
    VertexH v;
    load(a, variant, v);
    char* s = nullptr;
    check(dcx_rho(v.get(), &s));
    std::cout << take(s) << "\n";
  });
  auto* edist = emb->add_subcommand("dist", "l2 distance between embedded vertices");
  edist->add_option("v1", a)->required();
  edist->add_option("v2", b)->required();
  edist->callback([&] {
    VertexH u, v;
    load(a, variant, u);
    load(b, variant, v);
    double d = 0;
    check(dcx_rho_distance(u.get(), v.get(), &d));
    std::printf("%.17g\n", d);
  });
  auto* disp = emb->add_subcommand("displace", "x0 displacement of a labelled tree");
  disp->add_option("tree", a, "e.g. \"(. (. (. .)@0.5))\"")->required();
  disp->callback([&] {
    TreeH t, x;
    check(dcx_ltree_parse(a.c_str(), t.put()));
    check(dcx_ltree_x0(t.get(), x.put()));
    char* s = nullptr;
    check(dcx_ltree_format(x.get(), &s));
    double d2 = 0;
    check(dcx_ltree_displacement(t.get(), &d2));
    std::cout << "x0 tree " << take(s) << "\n";
    std::printf("displacement^2 %.17g\ndisplacement %.17g\n", d2, std::sqrt(d2));
    double parts[4];
    if (dcx_ltree_decompose(t.get(), parts) == DCX_OK)
      std::printf("decomposition %.17g + %.17g + %.17g = %.17g\n", parts[0], parts[1], parts[2],
                  parts[3]);
  });
  double bound = 1.4142135623730951;
  auto* search = emb->add_subcommand("search", "low-displacement tree over grid_tree(m, m)");
  search->add_option("--m", m)->required();
  search->add_option("--bound", bound);
  search->callback([&] {
    TreeH t;
    double d2 = 0;
    check(dcx_search_low_displacement(m, bound, t.put(), &d2));
    if (!t.get()) {
      std::cout << "NONE\n";
      status = 1;
      return;
    }
    char* s = nullptr;
    check(dcx_ltree_format(t.get(), &s));
    std::cout << take(s) << "\n";
    std::printf("displacement^2 %.17g\ndisplacement %.17g\n", d2, std::sqrt(d2));
  });

  int depth = 12;
  unsigned long long seed = 20260601ULL;
  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  verify->add_option("--depth", depth, "profile depth")->check(CLI::Range(8, 16));
  verify->add_option("--seed", seed);
  verify->callback([&] {
    int failed = 0;
    for (int id = 1; id <= dcx_criterion_count(); ++id) {
      int pass = 0;
      char* line = nullptr;
      check(dcx_run_criterion(id, seed, depth, &pass, &line));
      std::cout << take(line) << std::endl;
      failed += !pass;
    }
    std::cout << (failed ? std::to_string(failed) + " failed" : "all passed") << "\n";
    status = failed ? 1 : 0;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return 2;
  }
  return status;
}
