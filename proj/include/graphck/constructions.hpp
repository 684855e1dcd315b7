#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphck/graph.hpp"

namespace graphck {

// mu = head . tail with |head| < m and |tail| a multiple of m.
struct TruncationWitness {
  Path path;
  std::size_t m = 1;
  Path head;
  std::size_t tail_length = 0;
};

TruncationWitness truncate_path(const Path& mu, std::size_t m);

// The blow-up graph E(m). Vertices are the paths of the base of length < m
// (named by their path ids); the edge (e, mu) runs from e.mu to mu, or from
// s(e) to mu when |mu| = m - 1.
struct BlowupGraph {
  DirectedGraph base;
  std::size_t m = 1;
  DirectedGraph graph;
  // vertex_paths[x] is the base path that E(m)-vertex x stands for.
  std::vector<Path> vertex_paths;
  // E(m)-edge y is (edge_base[y], vertex_paths[edge_target[y]]).
  std::vector<EdgeId> edge_base;
  std::vector<VertexId> edge_target;

  VertexId vertex_of(const Path& mu) const;
  // The E(m)-edge (e, mu); mu given as an E(m) vertex.
  EdgeId edge_of(EdgeId e, VertexId mu) const;
  // The E(m) vertex at the base vertex v (a length-zero path).
  VertexId hub(VertexId v) const { return v; }
};

BlowupGraph blowup_graph(const DirectedGraph& g, std::size_t m);

// i_m : E^* -> E(m)^*.
Path embed_path(const BlowupGraph& b, const Path& mu);

// Finite subgraph containing the given vertices and edges in which every
// vertex connects to a cycle and Condition (K) holds.
DirectedGraph jeong_park_subgraph(const DirectedGraph& g, std::span<const VertexId> v_set,
                                  std::span<const EdgeId> f_set);

// Hangs a chain of `depth` fresh edges off every sink. The result is marked as
// a truncation.
DirectedGraph add_tails(const DirectedGraph& g, std::size_t depth);

}  // namespace graphck
