#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "maslov/matrix.hpp"

namespace maslov {

struct Edge {
    std::size_t src;
    std::size_t dst;
    double weight;
};

/// Weighted digraph read from a `src dst weight` edge list.  Node indices
/// follow order of first appearance.
struct Graph {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    std::size_t index_of(const std::string& name) const;  // throws DomainError
};

/// Blank lines and lines starting with '#' are skipped.  ParseError carries
/// the offending line number.
Graph read_edge_list(std::istream& in);

/// Min-plus matrix with H(i, k) = weight of edge k -> i (parallel edges keep
/// the lightest), so the Bellman solution X = H X (+) F holds distances.
SemiringMatrix transition_matrix(const Graph& g);

/// Column vector with one at `source` and zero elsewhere.
SemiringMatrix source_column(const Graph& g, std::size_t source);

/// Single-source distances via solve_bellman.
std::vector<double> shortest_distances(const Graph& g, std::size_t source,
                                       BellmanMethod method = BellmanMethod::Jacobi);

/// CSV `node,distance` with a header row; unreachable nodes print `inf`.
void write_distances_csv(std::ostream& out, const Graph& g, const std::vector<double>& dist, int digits = 12);

}  // namespace maslov
