#ifndef DIAGCX_H
#define DIAGCX_H

/* Plain C interface to diagcx. Every call returns DCX_OK or an error code;
   the message for the most recent failure on this thread is dcx_last_error().
   Strings returned through char** are owned by the caller: dcx_free_string. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DCX_API __declspec(dllexport)
#else
#define DCX_API __attribute__((visibility("default")))
#endif

enum {
  DCX_OK = 0,
  DCX_E_INVALID = 1,      /* malformed input */
  DCX_E_MISMATCH = 2,     /* incompatible words, presentations or shapes */
  DCX_E_PRECONDITION = 3, /* operation undefined on this input */
  DCX_E_LIMIT = 4,        /* resource cap exceeded */
  DCX_E_DEPTH = 5,        /* profile truncated too shallow */
  DCX_E_INTERNAL = 6
};

typedef struct dcx_picture dcx_picture; /* also used for group elements */
typedef struct dcx_vertex dcx_vertex;
typedef struct dcx_profile dcx_profile;
typedef struct dcx_ltree dcx_ltree;

DCX_API const char* dcx_last_error(void);
DCX_API void dcx_free_string(char* s);

/* pictures: full text format, or bracket shorthand such as "((. .) .)" */
DCX_API int dcx_picture_parse(const char* text, const char* variant, dcx_picture** out);
/* group element from a word in x0, x1, pi<k>, powers, commutators */
DCX_API int dcx_element_parse(const char* word, dcx_picture** out);
DCX_API void dcx_picture_free(dcx_picture* p);
DCX_API int dcx_picture_serialize(const dcx_picture* p, char** out);
/* bracket shorthand when p is a positive tree, serialization otherwise */
DCX_API int dcx_picture_format(const dcx_picture* p, char** out);
DCX_API int dcx_picture_size(const dcx_picture* p, int* out);
DCX_API int dcx_picture_reduce(const dcx_picture* p, dcx_picture** out);
DCX_API int dcx_picture_concat(const dcx_picture* upper, const dcx_picture* lower,
                               dcx_picture** out);
DCX_API int dcx_picture_invert(const dcx_picture* p, dcx_picture** out);
DCX_API int dcx_picture_equivalent(const dcx_picture* a, const dcx_picture* b, int* out);

/* vertices */
DCX_API int dcx_vertex_of(const dcx_picture* p, dcx_vertex** out);
DCX_API void dcx_vertex_free(dcx_vertex* v);
DCX_API int dcx_vertex_key(const dcx_vertex* v, char** out);
DCX_API int dcx_vertex_format(const dcx_vertex* v, char** out);
DCX_API int dcx_vertex_size(const dcx_vertex* v, int* out);
DCX_API int dcx_vertex_distance(const dcx_vertex* a, const dcx_vertex* b, int* out);
DCX_API int dcx_vertex_leq(const dcx_vertex* a, const dcx_vertex* b, int* out);
DCX_API int dcx_act(const dcx_picture* element, const dcx_vertex* v, dcx_vertex** out);
/* one cube per line: "dim <d> min <key> max <key>" */
DCX_API int dcx_cubes_at(const dcx_vertex* v, int max_dim, char** out);
/* ball text ("vertex k" / "edge k1 k2" lines) or DOT */
DCX_API int dcx_ball(const char* word, int radius, const char* variant, int dot, char** out,
                     int* vertices, int* edges);

DCX_API int dcx_relation_holds(const char* word, int* out);
DCX_API int dcx_link_condition(int m, int n, int* out);

/* hyperplanes are named by their min vertex */
DCX_API int dcx_hyperplanes_below(const dcx_vertex* v, char** out); /* one label per line */
DCX_API int dcx_hyperplane_label(const dcx_vertex* min, char** out);
DCX_API int dcx_separates(const dcx_vertex* min, const dcx_vertex* v, int* out);
DCX_API int dcx_halfspace_leq(const dcx_vertex* min1, const dcx_vertex* min2, int* out);
DCX_API int dcx_halfspaces_meet(const dcx_vertex* min1, const dcx_vertex* min2, int* out);

/* profiles: kinds L, R, LR, INF; samples open-left, stranded, zipper */
DCX_API int dcx_profile_canonical(const char* kind, int depth, dcx_profile** out);
DCX_API int dcx_profile_sample(const char* name, int depth, dcx_profile** out);
DCX_API int dcx_profile_parse(const char* bracket, int depth, dcx_profile** out);
DCX_API void dcx_profile_free(dcx_profile* p);
DCX_API int dcx_profile_format(const dcx_profile* p, char** out);
DCX_API int dcx_profile_depth(const dcx_profile* p, int* out);
DCX_API int dcx_profile_validate(const dcx_profile* p, int* ok, char** violation);
DCX_API int dcx_profile_act(const dcx_picture* element, const dcx_profile* p, dcx_profile** out);
DCX_API int dcx_profile_fixed(const dcx_picture* element, const dcx_profile* p, int* out);
/* -1 when the two agree to the smaller depth */
DCX_API int dcx_profile_first_difference(const dcx_profile* a, const dcx_profile* b, int* out);

/* embedding and labelled trees */
DCX_API int dcx_rho(const dcx_vertex* v, char** out);
DCX_API int dcx_rho_distance(const dcx_vertex* a, const dcx_vertex* b, double* out);
DCX_API int dcx_ltree_parse(const char* text, dcx_ltree** out);
DCX_API void dcx_ltree_free(dcx_ltree* t);
DCX_API int dcx_ltree_format(const dcx_ltree* t, char** out);
DCX_API int dcx_ltree_x0(const dcx_ltree* t, dcx_ltree** out);
DCX_API int dcx_ltree_displacement(const dcx_ltree* t, double* squared);
/* a, b, c and their total; all-ones trees with carets at root, 1, 10, 11 */
DCX_API int dcx_ltree_decompose(const dcx_ltree* t, double parts[4]);
/* *out is NULL when no tree in the family meets the bound */
DCX_API int dcx_search_low_displacement(int m, double bound, dcx_ltree** out, double* squared);

/* acceptance criteria, numbered from 1 */
DCX_API int dcx_criterion_count(void);
DCX_API int dcx_run_criterion(int id, unsigned long long seed, int depth, int* pass, char** line);

#ifdef __cplusplus
}
#endif

#endif
