#include "graphck/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "graphck/errors.hpp"

namespace graphck {

// ---- Path ---------------------------------------------------------------

Path::Path(std::vector<VertexId> vertices, std::vector<EdgeId> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.size() != edges_.size() + 1) {
    throw ContractViolation("Path: vertex sequence must be one longer than edge sequence");
  }
}

Path Path::prefix(std::size_t n) const { return slice(0, n); }

Path Path::suffix_from(std::size_t n) const { return slice(n, length()); }

Path Path::slice(std::size_t from, std::size_t to) const {
  if (from > to || to > length()) throw ContractViolation("Path::slice out of range");
  return Path(std::vector<VertexId>(vertices_.begin() + from, vertices_.begin() + to + 1),
              std::vector<EdgeId>(edges_.begin() + from, edges_.begin() + to));
}

bool Path::is_prefix_of(const Path& other) const {
  if (source() != other.source() || length() > other.length()) return false;
  return std::equal(edges_.begin(), edges_.end(), other.edges_.begin());
}

Path Path::concat(const Path& tail) const {
  if (range() != tail.source()) throw ContractViolation("Path::concat: paths not composable");
  Path out = *this;
  out.edges_.insert(out.edges_.end(), tail.edges_.begin(), tail.edges_.end());
  out.vertices_.insert(out.vertices_.end(), tail.vertices_.begin() + 1, tail.vertices_.end());
  return out;
}

Path Path::append(EdgeId e, VertexId range) const {
  Path out = *this;
  out.edges_.push_back(e);
  out.vertices_.push_back(range);
  return out;
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (a.is_vertex()) return a.source() <=> b.source();
  for (std::size_t i = 0; i < a.length(); ++i) {
    if (auto c = a.edges_[i] <=> b.edges_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---- VertexSet ----------------------------------------------------------

VertexSet VertexSet::of(std::size_t universe, std::span<const VertexId> members) {
  VertexSet s(universe);
  for (VertexId v : members) s.insert(v);
  return s;
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  s.bits_.assign(universe, true);
  return s;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<VertexId>(i));
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.contains(static_cast<VertexId>(i))) return false;
  return true;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet out(std::max(universe(), other.universe()));
  for (std::size_t i = 0; i < out.bits_.size(); ++i)
    out.bits_[i] = contains(static_cast<VertexId>(i)) || other.contains(static_cast<VertexId>(i));
  return out;
}

std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  auto ma = a.members();
  auto mb = b.members();
  return std::lexicographical_compare_three_way(ma.begin(), ma.end(), mb.begin(), mb.end());
}

// ---- DirectedGraph ------------------------------------------------------

VertexId DirectedGraph::add_vertex(std::string id) {
  if (id.empty()) throw ContractViolation("empty vertex id");
  if (vertex_index_.count(id)) throw ContractViolation("duplicate vertex id " + id);
  auto v = static_cast<VertexId>(vertex_ids_.size());
  vertex_index_.emplace(id, v);
  vertex_ids_.push_back(std::move(id));
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

EdgeId DirectedGraph::add_edge(std::string id, VertexId source, VertexId range) {
  if (id.empty()) throw ContractViolation("empty edge id");
  if (source >= vertex_count() || range >= vertex_count())
    throw ContractViolation("edge " + id + " has an endpoint outside the graph");
  if (edge_index_.count(id)) throw ContractViolation("duplicate edge id " + id);
  auto e = static_cast<EdgeId>(edges_.size());
  edge_index_.emplace(id, e);
  edges_.push_back(Edge{std::move(id), source, range});
  out_[source].push_back(e);
  in_[range].push_back(e);
  return e;
}

EdgeId DirectedGraph::add_edge(std::string id, std::string_view source, std::string_view range) {
  return add_edge(std::move(id), vertex(source), vertex(range));
}

std::optional<VertexId> DirectedGraph::find_vertex(std::string_view id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> DirectedGraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId DirectedGraph::vertex(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw ContractViolation("unknown vertex " + std::string(id));
}

EdgeId DirectedGraph::edge_by_id(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw ContractViolation("unknown edge " + std::string(id));
}

Path DirectedGraph::edge_path(EdgeId e) const {
  return Path({source(e), range(e)}, {e});
}

Path DirectedGraph::make_path(std::span<const EdgeId> edges) const {
  if (edges.empty()) throw ContractViolation("make_path: empty edge list needs a base vertex");
  std::vector<VertexId> vs{source(edges[0])};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] >= edge_count()) throw ContractViolation("make_path: edge out of range");
    if (source(edges[i]) != vs.back())
      throw ContractViolation("make_path: " + edges_[edges[i - 1]].id + " and " +
                              edges_[edges[i]].id + " are not composable");
    vs.push_back(range(edges[i]));
  }
  return Path(std::move(vs), std::vector<EdgeId>(edges.begin(), edges.end()));
}

Path DirectedGraph::extend(const Path& p, EdgeId e) const {
  if (source(e) != p.range()) throw ContractViolation("extend: edge not composable with path");
  return p.append(e, range(e));
}

bool DirectedGraph::is_valid(const Path& p) const {
  if (p.source() >= vertex_count()) return false;
  for (std::size_t i = 0; i < p.length(); ++i) {
    EdgeId e = p.edge(i);
    if (e >= edge_count() || source(e) != p.vertices()[i] || range(e) != p.vertices()[i + 1])
      return false;
  }
  return true;
}

Path DirectedGraph::parse_path(std::string_view spec) const {
  if (spec.empty()) throw ContractViolation("empty path specification");
  if (auto v = find_vertex(spec)) return Path::at_vertex(*v);
  std::vector<EdgeId> es;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i < spec.size()) {
      if (spec[i] == '(') ++depth;
      if (spec[i] == ')') --depth;
      if (spec[i] != '.' || depth != 0) continue;
    }
    auto token = spec.substr(start, i - start);
    auto e = find_edge(token);
    if (!e) throw ContractViolation("unknown edge or vertex '" + std::string(token) + "' in path " +
                                    std::string(spec));
    es.push_back(*e);
    start = i + 1;
  }
  return make_path(es);
}

std::string DirectedGraph::path_id(const Path& p) const {
  if (p.is_vertex()) return vertex_id(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (i) out += '.';
    out += edges_.at(p.edge(i)).id;
  }
  return out;
}

bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.vertex_ids_ != b.vertex_ids_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || x.source != y.source || x.range != y.range) return false;
  }
  return true;
}

// ---- path combinatorics -------------------------------------------------

IntMatrix adjacency_matrix(const DirectedGraph& g) {
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) a(g.source(e), g.range(e)) += 1;
  return a;
}

namespace {

void check_path_budget(std::size_t n, std::size_t max_paths) {
  if (n > max_paths)
    throw ResourceError("path enumeration exceeds " + std::to_string(max_paths) + " paths");
}

// Extends every path of `level` by one edge; order is preserved lexicographically.
std::vector<Path> next_level(const DirectedGraph& g, const std::vector<Path>& level,
                             std::size_t budget_used, std::size_t max_paths) {
  std::vector<Path> out;
  for (const Path& p : level) {
    for (EdgeId e : g.out_edges(p.range())) {
      out.push_back(p.append(e, g.range(e)));
      check_path_budget(budget_used + out.size(), max_paths);
    }
  }
  return out;
}

}  // namespace

std::vector<Path> paths(const DirectedGraph& g, std::size_t lo, std::size_t hi,
                        std::size_t max_paths) {
  if (lo > hi) throw ContractViolation("paths: lo > hi");
  std::vector<Path> out;
  if (hi == 0) return out;
  std::vector<Path> level;
  for (VertexId v = 0; v < g.vertex_count(); ++v) level.push_back(Path::at_vertex(v));
  for (std::size_t len = 0; len < hi; ++len) {
    if (len >= lo) {
      out.insert(out.end(), level.begin(), level.end());
      check_path_budget(out.size(), max_paths);
    }
    if (len + 1 == hi) break;
    if (len == 0) {
      // Length one is ordered by edge index, not grouped by source.
      level.clear();
      for (EdgeId e = 0; e < g.edge_count(); ++e) level.push_back(g.edge_path(e));
      check_path_budget(out.size() + level.size(), max_paths);
    } else {
      level = next_level(g, level, out.size(), max_paths);
    }
  }
  return out;
}

std::vector<Path> paths_from(const DirectedGraph& g, VertexId v, std::size_t lo, std::size_t hi,
                             std::size_t max_paths) {
  if (lo > hi) throw ContractViolation("paths_from: lo > hi");
  std::vector<Path> out;
  std::vector<Path> level{Path::at_vertex(v)};
  for (std::size_t len = 0; len < hi; ++len) {
    if (len >= lo) {
      out.insert(out.end(), level.begin(), level.end());
      check_path_budget(out.size(), max_paths);
    }
    if (len + 1 == hi) break;
    level = next_level(g, level, out.size(), max_paths);
  }
  return out;
}

Integer count_paths_from(const DirectedGraph& g, VertexId v, std::size_t hi) {
  std::vector<Integer> at(g.vertex_count());
  at[v] = 1;
  Integer total = 0;
  for (std::size_t len = 0; len < hi; ++len) {
    for (const auto& c : at) total += c;
    std::vector<Integer> next(g.vertex_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) next[g.range(e)] += at[g.source(e)];
    at = std::move(next);
  }
  return total;
}

std::vector<Path> first_return_paths(const DirectedGraph& g, VertexId v,
                                     std::optional<std::size_t> max_length) {
  const std::size_t limit = max_length.value_or(3 * g.vertex_count());
  std::vector<Path> out;
  std::vector<Path> frontier{Path::at_vertex(v)};
  std::size_t work = 0;
  for (std::size_t len = 0; len < limit && !frontier.empty(); ++len) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (EdgeId e : g.out_edges(p.range())) {
        Path q = p.append(e, g.range(e));
        if (g.range(e) == v) {
          out.push_back(std::move(q));
        } else {
          next.push_back(std::move(q));
        }
        check_path_budget(++work, kDefaultMaxPaths);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count_first_return_paths(const DirectedGraph& g, VertexId v, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  auto sat = [cap](std::size_t x) { return std::min(x, cap); };
  std::vector<std::size_t> at(n, 0);
  at[v] = 1;
  std::size_t returns = 0;
  for (std::size_t len = 0; len < 3 * n && returns < cap; ++len) {
    std::vector<std::size_t> next(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (at[g.source(e)] == 0) continue;
      if (g.range(e) == v) {
        returns = sat(returns + at[g.source(e)]);
      } else {
        next[g.range(e)] = sat(next[g.range(e)] + at[g.source(e)]);
      }
    }
    at = std::move(next);
  }
  return returns;
}

std::optional<VertexId> condition_K_witness(const DirectedGraph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (count_first_return_paths(g, v, 2) == 1) return v;
  return std::nullopt;
}

bool satisfies_condition_K(const DirectedGraph& g) { return !condition_K_witness(g); }

VertexSet reachable_from(const DirectedGraph& g, const VertexSet& start) {
  VertexSet seen(g.vertex_count());
  std::deque<VertexId> queue;
  for (VertexId v : start.members()) {
    seen.insert(v);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.out_edges(v)) {
      if (!seen.contains(g.range(e))) {
        seen.insert(g.range(e));
        queue.push_back(g.range(e));
      }
    }
  }
  return seen;
}

VertexSet vertices_on_cycles(const DirectedGraph& g) {
  VertexSet out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexSet start(g.vertex_count());
    for (EdgeId e : g.out_edges(v)) start.insert(g.range(e));
    if (reachable_from(g, start).contains(v)) out.insert(v);
  }
  return out;
}

std::optional<VertexId> vertex_not_reaching_cycle(const DirectedGraph& g) {
  VertexSet cyc = vertices_on_cycles(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexSet reach = reachable_from(g, VertexSet::of(g.vertex_count(), std::vector{v}));
    bool hit = false;
    for (VertexId w : reach.members()) hit = hit || cyc.contains(w);
    if (!hit) return v;
  }
  return std::nullopt;
}

bool every_vertex_connects_to_cycle(const DirectedGraph& g) {
  return !vertex_not_reaching_cycle(g);
}

bool is_acyclic(const DirectedGraph& g) { return vertices_on_cycles(g).empty(); }

std::vector<VertexId> sinks(const DirectedGraph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) out.push_back(v);
  return out;
}

bool has_sinks(const DirectedGraph& g) { return !sinks(g).empty(); }

// ---- hereditary / saturated sets ----------------------------------------

bool is_hereditary(const DirectedGraph& g, const VertexSet& h) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (h.contains(g.source(e)) && !h.contains(g.range(e))) return false;
  return true;
}

bool is_saturated(const DirectedGraph& g, const VertexSet& h) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v) || g.is_sink(v)) continue;
    bool all_in = true;
    for (EdgeId e : g.out_edges(v)) all_in = all_in && h.contains(g.range(e));
    if (all_in) return false;
  }
  return true;
}

VertexSet hereditary_saturated_closure(const DirectedGraph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count())
    throw ContractViolation("vertex set does not belong to this graph");
  VertexSet h = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (h.contains(g.source(e)) && !h.contains(g.range(e))) {
        h.insert(g.range(e));
        changed = true;
      }
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (h.contains(v) || g.is_sink(v)) continue;
      bool all_in = true;
      for (EdgeId e : g.out_edges(v)) all_in = all_in && h.contains(g.range(e));
      if (all_in) {
        h.insert(v);
        changed = true;
      }
    }
  }
  return h;
}

std::vector<VertexSet> enumerate_hereditary_saturated(const DirectedGraph& g,
                                                      std::size_t max_vertices) {
  if (g.vertex_count() > max_vertices)
    throw ResourceError("ideal lattice enumeration limited to " + std::to_string(max_vertices) +
                        " vertices; graph has " + std::to_string(g.vertex_count()));
  const std::size_t n = g.vertex_count();
  std::set<VertexSet> found;
  std::deque<VertexSet> queue;
  VertexSet bottom = hereditary_saturated_closure(g, VertexSet(n));
  found.insert(bottom);
  queue.push_back(bottom);
  while (!queue.empty()) {
    VertexSet s = queue.front();
    queue.pop_front();
    for (VertexId v = 0; v < n; ++v) {
      if (s.contains(v)) continue;
      VertexSet t = s;
      t.insert(v);
      t = hereditary_saturated_closure(g, t);
      if (found.insert(t).second) queue.push_back(t);
    }
  }
  return {found.begin(), found.end()};
}

DirectedGraph subgraph(const DirectedGraph& g, const VertexSet& vertices,
                       std::span<const EdgeId> edges) {
  VertexSet keep = vertices;
  std::vector<bool> edge_kept(g.edge_count(), false);
  for (EdgeId e : edges) {
    edge_kept.at(e) = true;
    keep.insert(g.source(e));
    keep.insert(g.range(e));
  }
  DirectedGraph out;
  for (VertexId v : keep.members()) out.add_vertex(g.vertex_id(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (edge_kept[e])
      out.add_edge(g.edge(e).id, g.vertex_id(g.source(e)), g.vertex_id(g.range(e)));
  return out;
}

DirectedGraph quotient_graph(const DirectedGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw ContractViolation("quotient_graph: " + format_vertex_set(g, h) +
                            " is not hereditary and saturated");
  VertexSet rest(g.vertex_count());
  std::vector<EdgeId> es;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!h.contains(v)) rest.insert(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!h.contains(g.range(e))) es.push_back(e);
  return subgraph(g, rest, es);
}

DirectedGraph restriction_graph(const DirectedGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h))
    throw ContractViolation("restriction_graph: " + format_vertex_set(g, h) +
                            " is not hereditary");
  std::vector<EdgeId> es;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (h.contains(g.source(e))) es.push_back(e);
  return subgraph(g, h, es);
}

std::string format_vertex_set(const DirectedGraph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (VertexId v : s.members()) {
    if (!first) out += ',';
    out += g.vertex_id(v);
    first = false;
  }
  return out + "}";
}

}  // namespace graphck
