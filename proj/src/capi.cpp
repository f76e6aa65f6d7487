#include "diagcx/diagcx.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "diagcx/embed.hpp"
#include "diagcx/profile.hpp"
#include "diagcx/verify.hpp"

using namespace diagcx;

struct dcx_picture {
  Picture p;
};
struct dcx_vertex {
  Vertex v;
};
struct dcx_profile {
  TruncatedProfile p;
};
struct dcx_ltree {
  LabelledTree t;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& f) {
  try {
    f();
    return DCX_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DCX_E_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DCX_E_INTERNAL;
  }
}

template <class T>
const T& need(const T* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidInput, std::string("null ") + what);
  return *p;
}

template <class T>
T& out(T* p) {
  if (!p) fail(ErrorCode::kInvalidInput, "null output pointer");
  return *p;
}

std::string text(const char* s, const char* what) {
  if (!s) fail(ErrorCode::kInvalidInput, std::string("null ") + what);
  return s;
}

char* dup(const std::string& s) {
  char* r = static_cast<char*>(std::malloc(s.size() + 1));
  if (!r) throw std::bad_alloc();
  std::memcpy(r, s.c_str(), s.size() + 1);
  return r;
}

std::string format_vertex(const Vertex& v) {
  return is_positive_tree(v.picture()) ? tree_bracket(v.picture()) : canonical_serialize(v.picture());
}

}  // namespace

extern "C" {

const char* dcx_last_error(void) { return last_error.c_str(); }
void dcx_free_string(char* s) { std::free(s); }

int dcx_picture_parse(const char* t, const char* variant, dcx_picture** o) {
  return guarded([&] {
    std::string s = text(t, "picture text");
    auto first = s.find_first_not_of(" \t\r\n");
    Picture p = first != std::string::npos && (s[first] == '(' || s[first] == '.')
                    ? parse_tree(s, variant ? parse_variant(variant) : Variant::kPlanar)
                    : parse_picture(s);
    out(o) = new dcx_picture{std::move(p)};
  });
}

int dcx_element_parse(const char* word, dcx_picture** o) {
  return guarded([&] { out(o) = new dcx_picture{parse_element(text(word, "word")).picture}; });
}

void dcx_picture_free(dcx_picture* p) { delete p; }

int dcx_picture_serialize(const dcx_picture* p, char** o) {
  return guarded([&] { out(o) = dup(canonical_serialize(need(p, "picture").p)); });
}

int dcx_picture_format(const dcx_picture* p, char** o) {
  return guarded([&] {
    const Picture& q = need(p, "picture").p;
    out(o) = dup(is_positive_tree(q) ? tree_bracket(q) + "\n" : canonical_serialize(q));
  });
}

int dcx_picture_size(const dcx_picture* p, int* o) {
  return guarded([&] { out(o) = need(p, "picture").p.size(); });
}

int dcx_picture_reduce(const dcx_picture* p, dcx_picture** o) {
  return guarded([&] { out(o) = new dcx_picture{reduce(need(p, "picture").p)}; });
}

int dcx_picture_concat(const dcx_picture* a, const dcx_picture* b, dcx_picture** o) {
  return guarded([&] {
    out(o) = new dcx_picture{concatenate(need(a, "upper picture").p, need(b, "lower picture").p)};
  });
}

int dcx_picture_invert(const dcx_picture* p, dcx_picture** o) {
  return guarded([&] { out(o) = new dcx_picture{invert(need(p, "picture").p)}; });
}

int dcx_picture_equivalent(const dcx_picture* a, const dcx_picture* b, int* o) {
  return guarded([&] { out(o) = equal_mod_dipoles(need(a, "picture").p, need(b, "picture").p); });
}

int dcx_vertex_of(const dcx_picture* p, dcx_vertex** o) {
  return guarded([&] { out(o) = new dcx_vertex{vertex_of(need(p, "picture").p)}; });
}

void dcx_vertex_free(dcx_vertex* v) { delete v; }

int dcx_vertex_key(const dcx_vertex* v, char** o) {
  return guarded([&] { out(o) = dup(need(v, "vertex").v.key()); });
}

int dcx_vertex_format(const dcx_vertex* v, char** o) {
  return guarded([&] { out(o) = dup(format_vertex(need(v, "vertex").v)); });
}

int dcx_vertex_size(const dcx_vertex* v, int* o) {
  return guarded([&] { out(o) = need(v, "vertex").v.size(); });
}

int dcx_vertex_distance(const dcx_vertex* a, const dcx_vertex* b, int* o) {
  return guarded([&] { out(o) = edge_distance(need(a, "vertex").v, need(b, "vertex").v); });
}

int dcx_vertex_leq(const dcx_vertex* a, const dcx_vertex* b, int* o) {
  return guarded([&] { out(o) = vertex_leq(need(a, "vertex").v, need(b, "vertex").v); });
}

int dcx_act(const dcx_picture* g, const dcx_vertex* v, dcx_vertex** o) {
  return guarded([&] {
    GroupElement e = element_of(need(g, "element").p);
    out(o) = new dcx_vertex{act(e, need(v, "vertex").v)};
  });
}

int dcx_cubes_at(const dcx_vertex* v, int max_dim, char** o) {
  return guarded([&] {
    std::string s;
    for (const Cube& c : cubes_at(need(v, "vertex").v, max_dim))
      s += "dim " + std::to_string(c.dimension()) + " min " + format_vertex(c.min_vertex()) +
           " max " + format_vertex(c.max_vertex()) + "\n";
    out(o) = dup(s);
  });
}

int dcx_ball(const char* word, int radius, const char* variant, int dot, char** o, int* nv,
             int* ne) {
  return guarded([&] {
    BallGraph g = ball(Presentation::thompson(), text(word, "word"), radius,
                       variant ? parse_variant(variant) : Variant::kPlanar);
    out(o) = dup(dot ? export_dot(g) : export_text(g));
    if (nv) *nv = static_cast<int>(g.vertices.size());
    if (ne) *ne = static_cast<int>(g.edges.size());
  });
}

int dcx_relation_holds(const char* word, int* o) {
  return guarded([&] { out(o) = check_relation(text(word, "word")); });
}

int dcx_link_condition(int m, int n, int* o) {
  return guarded([&] { out(o) = link_condition_check(m, n); });
}

int dcx_hyperplanes_below(const dcx_vertex* v, char** o) {
  return guarded([&] {
    std::string s;
    for (const Hyperplane& h : hyperplanes_below(need(v, "vertex").v)) s += h.label() + "\n";
    out(o) = dup(s);
  });
}

int dcx_hyperplane_label(const dcx_vertex* m, char** o) {
  return guarded([&] { out(o) = dup(Hyperplane(need(m, "min vertex").v).label()); });
}

int dcx_separates(const dcx_vertex* m, const dcx_vertex* v, int* o) {
  return guarded([&] { out(o) = separates(Hyperplane(need(m, "min vertex").v), need(v, "vertex").v); });
}

int dcx_halfspace_leq(const dcx_vertex* a, const dcx_vertex* b, int* o) {
  return guarded([&] {
    out(o) = halfspace_leq(Hyperplane(need(a, "min vertex").v), Hyperplane(need(b, "min vertex").v));
  });
}

int dcx_halfspaces_meet(const dcx_vertex* a, const dcx_vertex* b, int* o) {
  return guarded([&] {
    out(o) = halfspaces_intersect(Hyperplane(need(a, "min vertex").v),
                                  Hyperplane(need(b, "min vertex").v));
  });
}

int dcx_profile_canonical(const char* kind, int depth, dcx_profile** o) {
  return guarded([&] {
    out(o) = new dcx_profile{canonical_profile(parse_profile_kind(text(kind, "kind")), depth)};
  });
}

int dcx_profile_sample(const char* name, int depth, dcx_profile** o) {
  return guarded([&] { out(o) = new dcx_profile{sample_profile(text(name, "sample name"), depth)}; });
}

int dcx_profile_parse(const char* bracket, int depth, dcx_profile** o) {
  return guarded([&] { out(o) = new dcx_profile{parse_profile(text(bracket, "profile"), depth)}; });
}

void dcx_profile_free(dcx_profile* p) { delete p; }

int dcx_profile_format(const dcx_profile* p, char** o) {
  return guarded([&] { out(o) = dup(format_profile(need(p, "profile").p)); });
}

int dcx_profile_depth(const dcx_profile* p, int* o) {
  return guarded([&] { out(o) = need(p, "profile").p.depth; });
}

int dcx_profile_validate(const dcx_profile* p, int* ok, char** violation) {
  return guarded([&] {
    ProfileReport r = validate_profile(need(p, "profile").p);
    out(ok) = r.ok;
    if (violation) *violation = dup(r.violation);
  });
}

int dcx_profile_act(const dcx_picture* g, const dcx_profile* p, dcx_profile** o) {
  return guarded([&] {
    out(o) = new dcx_profile{act_profile(element_of(need(g, "element").p), need(p, "profile").p)};
  });
}

int dcx_profile_fixed(const dcx_picture* g, const dcx_profile* p, int* o) {
  return guarded([&] {
    out(o) = is_fixed_to_depth(element_of(need(g, "element").p), need(p, "profile").p);
  });
}

int dcx_profile_first_difference(const dcx_profile* a, const dcx_profile* b, int* o) {
  return guarded([&] { out(o) = first_difference_depth(need(a, "profile").p, need(b, "profile").p); });
}

int dcx_rho(const dcx_vertex* v, char** o) {
  return guarded([&] { out(o) = dup(format_vector(rho_vertex(need(v, "vertex").v))); });
}

int dcx_rho_distance(const dcx_vertex* a, const dcx_vertex* b, double* o) {
  return guarded([&] {
    out(o) = l2_distance(rho_vertex(need(a, "vertex").v), rho_vertex(need(b, "vertex").v));
  });
}

int dcx_ltree_parse(const char* t, dcx_ltree** o) {
  return guarded([&] { out(o) = new dcx_ltree{parse_labelled_tree(text(t, "labelled tree"))}; });
}

void dcx_ltree_free(dcx_ltree* t) { delete t; }

int dcx_ltree_format(const dcx_ltree* t, char** o) {
  return guarded([&] { out(o) = dup(format_tree(need(t, "labelled tree").t)); });
}

int dcx_ltree_x0(const dcx_ltree* t, dcx_ltree** o) {
  return guarded([&] { out(o) = new dcx_ltree{x0_action_tree(need(t, "labelled tree").t)}; });
}

int dcx_ltree_displacement(const dcx_ltree* t, double* o) {
  return guarded([&] { out(o) = displacement_squared(need(t, "labelled tree").t); });
}

int dcx_ltree_decompose(const dcx_ltree* t, double parts[4]) {
  return guarded([&] {
    Decomposition d = displacement_decomposition(need(t, "labelled tree").t);
    double* p = &out(parts);
    p[0] = d.a, p[1] = d.b, p[2] = d.c, p[3] = d.total;
  });
}

int dcx_search_low_displacement(int m, double bound, dcx_ltree** o, double* squared) {
  return guarded([&] {
    auto r = search_low_displacement(m, bound);
    out(o) = r ? new dcx_ltree{r->tree} : nullptr;
    if (squared) *squared = r ? r->displacement_squared : 0.0;
  });
}

int dcx_criterion_count(void) { return kCriterionCount; }

int dcx_run_criterion(int id, unsigned long long seed, int depth, int* pass, char** line) {
  return guarded([&] {
    VerifyOptions opt;
    opt.seed = seed;
    opt.depth = depth;
    CriterionResult r = run_criterion(id, opt);
    out(pass) = r.pass;
    if (line) *line = dup(format_result(r));
  });
}

}  // extern "C"
