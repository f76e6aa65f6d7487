#pragma once

// Brute-force reference computations. They use only the ball graph, plain
// subset enumeration or address arithmetic, never the order/lub machinery
// they are compared against.

#include <map>
#include <string>
#include <vector>

#include "diagcx/complex.hpp"

namespace diagcx::oracle {

/// All-pairs breadth-first distances in the ball graph.
std::vector<std::vector<int>> bfs_distances(const BallGraph& g);

/// Index of the transistor-free vertex.
int base_index(const BallGraph& g);

/// Edge classes generated by opposite sides of 4-cycles (union-find);
/// returns class id per edge, ids dense from 0.
std::vector<int> square_classes(const BallGraph& g, int* count);

/// Whether v is cut off from the base vertex once the edges of `cls` are removed.
bool cut_by_class(const BallGraph& g, const std::vector<int>& edge_class, int cls,
                  int v);

/// The same for every vertex at once.
std::vector<bool> cut_off_by_class(const BallGraph& g, const std::vector<int>& edge_class,
                                   int cls);

/// Downward-closed subsets by filtering all 2^n subsets.
std::vector<std::vector<bool>> brute_downsets(const Picture& p);

/// Transistor-set containment search: does some injective relabelling carry
/// every transistor of a onto one of b with matching wiring? Exhaustive
/// backtracking over all injections (tiny pictures only).
bool brute_embeds(const Picture& a, const Picture& b);

/// x0 on caret addresses by direct re-addressing: 0w -> 00w, 10w -> 01w,
/// 11w -> 1w, plus fresh carets at the root and 0 labelled 1.
std::map<std::string, double> x0_readdress(const std::map<std::string, double>& coeffs);

/// Sum of squared coefficient differences, address by address.
double address_diff_squared(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b);

/// Whether u lies on a geodesic from the base vertex to v (the order,
/// read off the graph metric).
bool graph_leq(const std::vector<std::vector<int>>& dist, int base, int u, int v);

}  // namespace diagcx::oracle
