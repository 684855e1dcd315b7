#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphck/matrix.hpp"

namespace graphck {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  std::string id;
  VertexId source;
  VertexId range;
};

// A finite path. Consecutive edges satisfy r(e_i) = s(e_{i+1}); a path of
// length zero is a vertex. The visited vertex sequence is stored alongside
// the edges so that prefixes and suffixes do not need the graph.
//
// Ordering is length first, then lexicographic in edge indices (vertex index
// for length zero), which is the order every enumeration in the library uses.
class Path {
 public:
  Path() : vertices_{0} {}
  static Path at_vertex(VertexId v) { return Path(std::vector<VertexId>{v}, {}); }

  // Unchecked: vertices.size() == edges.size() + 1 and the sequence is
  // composable. Use DirectedGraph::make_path for validated construction.
  Path(std::vector<VertexId> vertices, std::vector<EdgeId> edges);

  VertexId source() const { return vertices_.front(); }
  VertexId range() const { return vertices_.back(); }
  std::size_t length() const { return edges_.size(); }
  bool is_vertex() const { return edges_.empty(); }

  std::span<const EdgeId> edges() const { return edges_; }
  std::span<const VertexId> vertices() const { return vertices_; }
  EdgeId edge(std::size_t i) const { return edges_[i]; }
  EdgeId last_edge() const { return edges_.back(); }

  Path prefix(std::size_t n) const;
  // Drops the first n edges.
  Path suffix_from(std::size_t n) const;
  Path slice(std::size_t from, std::size_t to) const;
  // Drops the last edge.
  Path drop_last() const { return prefix(length() - 1); }

  bool is_prefix_of(const Path& other) const;
  Path concat(const Path& tail) const;
  Path append(EdgeId e, VertexId range) const;

  friend std::strong_ordering operator<=>(const Path& a, const Path& b);
  friend bool operator==(const Path& a, const Path& b) {
    return a.edges_ == b.edges_ && a.vertices_.front() == b.vertices_.front();
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
};

// Subset of a graph's vertex set, stored as a membership mask over the
// universe 0..n-1. Ordered by cardinality, then lexicographically by the
// sorted member list.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}
  static VertexSet of(std::size_t universe, std::span<const VertexId> members);
  static VertexSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  bool contains(VertexId v) const { return v < bits_.size() && bits_[v]; }
  void insert(VertexId v) { bits_.at(v) = true; }
  void erase(VertexId v) { bits_.at(v) = false; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<VertexId> members() const;
  bool is_subset_of(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b);

 private:
  std::vector<bool> bits_;
};

// Finite directed multigraph with named vertices and edges. Vertices and
// edges keep insertion order; ids are unique within their kind.
class DirectedGraph {
 public:
  VertexId add_vertex(std::string id);
  EdgeId add_edge(std::string id, VertexId source, VertexId range);
  EdgeId add_edge(std::string id, std::string_view source, std::string_view range);

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return vertex_ids_.empty(); }

  const std::string& vertex_id(VertexId v) const { return vertex_ids_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  VertexId source(EdgeId e) const { return edges_[e].source; }
  VertexId range(EdgeId e) const { return edges_[e].range; }

  std::optional<VertexId> find_vertex(std::string_view id) const;
  std::optional<EdgeId> find_edge(std::string_view id) const;
  // Throws ContractViolation when the id is unknown.
  VertexId vertex(std::string_view id) const;
  EdgeId edge_by_id(std::string_view id) const;

  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }
  bool is_sink(VertexId v) const { return out_[v].empty(); }

  Path edge_path(EdgeId e) const;
  // Validated construction; throws ContractViolation if not composable.
  Path make_path(std::span<const EdgeId> edges) const;
  Path extend(const Path& p, EdgeId e) const;
  bool is_valid(const Path& p) const;

  // A vertex id, or a dot-joined list of edge ids. Dots inside parentheses
  // do not split, so synthesized blow-up edge ids can be referenced.
  Path parse_path(std::string_view spec) const;
  std::string path_id(const Path& p) const;

  // Set by add_tails: the graph is a finite truncation of an infinite one.
  bool truncated_tails() const { return truncated_tails_; }
  void mark_truncated_tails() { truncated_tails_ = true; }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b);

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  bool truncated_tails_ = false;
};

// ---- path combinatorics -------------------------------------------------

// A(v, w) = number of edges from v to w, indexed in vertex order.
IntMatrix adjacency_matrix(const DirectedGraph& g);

inline constexpr std::size_t kDefaultMaxPaths = 2'000'000;

// All paths with lo <= |path| < hi in length-then-lex order.
std::vector<Path> paths(const DirectedGraph& g, std::size_t lo, std::size_t hi,
                        std::size_t max_paths = kDefaultMaxPaths);
// Paths starting at v with lo <= |path| < hi.
std::vector<Path> paths_from(const DirectedGraph& g, VertexId v, std::size_t lo,
                             std::size_t hi, std::size_t max_paths = kDefaultMaxPaths);
// Number of paths from v with length < hi, without materializing them.
Integer count_paths_from(const DirectedGraph& g, VertexId v, std::size_t hi);

// Cycles at v that meet v only at their endpoints. There can be infinitely
// many; those of length <= max_length are listed (default 3|E^0|, which is
// long enough to see two of them whenever two exist).
std::vector<Path> first_return_paths(const DirectedGraph& g, VertexId v,
                                     std::optional<std::size_t> max_length = std::nullopt);
// min(number of first-return paths at v, cap), exact without enumeration.
std::size_t count_first_return_paths(const DirectedGraph& g, VertexId v, std::size_t cap = 2);

bool satisfies_condition_K(const DirectedGraph& g);
// First vertex violating Condition (K), if any.
std::optional<VertexId> condition_K_witness(const DirectedGraph& g);

VertexSet vertices_on_cycles(const DirectedGraph& g);
bool every_vertex_connects_to_cycle(const DirectedGraph& g);
std::optional<VertexId> vertex_not_reaching_cycle(const DirectedGraph& g);
bool is_acyclic(const DirectedGraph& g);
std::vector<VertexId> sinks(const DirectedGraph& g);
bool has_sinks(const DirectedGraph& g);
VertexSet reachable_from(const DirectedGraph& g, const VertexSet& start);

// ---- hereditary / saturated sets ----------------------------------------

bool is_hereditary(const DirectedGraph& g, const VertexSet& h);
bool is_saturated(const DirectedGraph& g, const VertexSet& h);
VertexSet hereditary_saturated_closure(const DirectedGraph& g, const VertexSet& s);

inline constexpr std::size_t kDefaultMaxLatticeVertices = 20;

// All hereditary saturated sets, by cardinality then lexicographically.
std::vector<VertexSet> enumerate_hereditary_saturated(
    const DirectedGraph& g, std::size_t max_vertices = kDefaultMaxLatticeVertices);

// E/H: vertices outside H, edges whose range lies outside H.
DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h);
// EH: vertices in H, edges whose source lies in H.
DirectedGraph restriction_graph(const DirectedGraph& g, const VertexSet& h);
// Subgraph on the given edges plus the given vertices, original order kept.
DirectedGraph subgraph(const DirectedGraph& g, const VertexSet& vertices,
                       std::span<const EdgeId> edges);

std::string format_vertex_set(const DirectedGraph& g, const VertexSet& s);

}  // namespace graphck
