#include "graphck/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "graphck/errors.hpp"

namespace graphck {

TruncationWitness truncate_path(const Path& mu, std::size_t m) {
  if (m == 0) throw ContractViolation("truncate_path: m must be positive");
  std::size_t head = mu.length() % m;
  return TruncationWitness{mu, m, mu.prefix(head), mu.length() - head};
}

VertexId BlowupGraph::vertex_of(const Path& mu) const {
  if (mu.length() >= m) throw ContractViolation("E(m) has no vertex for a path of length >= m");
  // vertex_paths is sorted in path order.
  auto it = std::lower_bound(vertex_paths.begin(), vertex_paths.end(), mu);
  if (it == vertex_paths.end() || !(*it == mu))
    throw ContractViolation("path is not a vertex of E(m)");
  return static_cast<VertexId>(it - vertex_paths.begin());
}

EdgeId BlowupGraph::edge_of(EdgeId e, VertexId mu) const {
  for (EdgeId y : graph.in_edges(mu))
    if (edge_base[y] == e) return y;
  throw ContractViolation("E(m) has no edge (" + base.edge(e).id + "," + graph.vertex_id(mu) +
                          ")");
}

BlowupGraph blowup_graph(const DirectedGraph& g, std::size_t m) {
  if (m == 0) throw ContractViolation("blowup_graph: m must be positive");
  BlowupGraph b;
  b.base = g;
  b.m = m;
  b.vertex_paths = paths(g, 0, m);
  for (const Path& p : b.vertex_paths) b.graph.add_vertex(g.path_id(p));

  // Paths starting at each base vertex, grouped so edges can be listed with e
  // outermost and mu in path order.
  std::vector<std::vector<VertexId>> starting_at(g.vertex_count());
  for (VertexId x = 0; x < b.vertex_paths.size(); ++x)
    starting_at[b.vertex_paths[x].source()].push_back(x);

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    for (VertexId x : starting_at[g.range(e)]) {
      const Path& mu = b.vertex_paths[x];
      VertexId src = mu.length() + 1 < m ? b.vertex_of(g.edge_path(e).concat(mu)) : g.source(e);
      b.graph.add_edge("(" + g.edge(e).id + "," + g.path_id(mu) + ")", src, x);
      b.edge_base.push_back(e);
      b.edge_target.push_back(x);
    }
  }
  return b;
}

namespace {

// The 1 <= |mu| <= m branch.
Path embed_short(const BlowupGraph& b, const Path& mu) {
  const std::size_t l = mu.length();
  std::vector<EdgeId> es;
  es.reserve(l);
  for (std::size_t k = 0; k < l; ++k)
    es.push_back(b.edge_of(mu.edge(k), b.vertex_of(mu.suffix_from(k + 1))));
  return b.graph.make_path(es);
}

}  // namespace

Path embed_path(const BlowupGraph& b, const Path& mu) {
  if (!b.base.is_valid(mu)) throw ContractViolation("embed_path: path not in the base graph");
  if (mu.is_vertex()) return Path::at_vertex(b.hub(mu.source()));
  if (mu.length() <= b.m) return embed_short(b, mu);
  const std::size_t head = mu.length() % b.m;
  Path out = head == 0 ? Path::at_vertex(b.hub(mu.source())) : embed_short(b, mu.prefix(head));
  for (std::size_t k = head; k < mu.length(); k += b.m) out = out.concat(embed_short(b, mu.slice(k, k + b.m)));
  return out;
}

// ---- Jeong--Park exhaustion ---------------------------------------------

namespace {

// Shortest path from v (length, then edge order) whose range is the source
// of one of its own edges, i.e. which ends by closing a cycle.
Path path_into_cycle(const DirectedGraph& g, VertexId v) {
  std::vector<Path> level{Path::at_vertex(v)};
  const std::size_t limit = 2 * g.vertex_count() + 1;
  for (std::size_t len = 0; len < limit && !level.empty(); ++len) {
    std::vector<Path> next;
    for (const Path& p : level) {
      for (EdgeId e : g.out_edges(p.range())) {
        Path q = p.append(e, g.range(e));
        auto vs = q.vertices();
        // s(q_n) = r(q) for some edge n; otherwise q is simple and worth extending.
        if (std::find(vs.begin(), vs.end() - 1, q.range()) != vs.end() - 1) return q;
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  throw ContractViolation("vertex " + g.vertex_id(v) + " does not connect to a cycle");
}

// Shortest cycle at x (simple apart from its endpoints) whose first edge is
// not `avoid`.
std::optional<Path> cycle_avoiding(const DirectedGraph& g, VertexId x, EdgeId avoid) {
  std::vector<Path> level;
  for (EdgeId e : g.out_edges(x))
    if (e != avoid) level.push_back(g.edge_path(e));
  for (std::size_t len = 1; len <= g.vertex_count() && !level.empty(); ++len) {
    std::vector<Path> next;
    for (const Path& p : level) {
      if (p.range() == x) return p;
    }
    for (const Path& p : level) {
      auto vs = p.vertices();
      for (EdgeId e : g.out_edges(p.range())) {
        if (std::find(vs.begin(), vs.end(), g.range(e)) != vs.end() && g.range(e) != x) continue;
        next.push_back(p.append(e, g.range(e)));
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

DirectedGraph jeong_park_subgraph(const DirectedGraph& g, std::span<const VertexId> v_set,
                                  std::span<const EdgeId> f_set) {
  if (auto w = condition_K_witness(g))
    throw ContractViolation("jeong_park_subgraph: Condition (K) fails at vertex " +
                            g.vertex_id(*w));
  if (auto w = vertex_not_reaching_cycle(g))
    throw ContractViolation("jeong_park_subgraph: vertex " + g.vertex_id(*w) +
                            " does not connect to a cycle");

  std::vector<bool> chosen(g.edge_count(), false);
  VertexSet seeds(g.vertex_count());
  for (VertexId v : v_set) seeds.insert(v);
  for (EdgeId f : f_set) {
    chosen.at(f) = true;
    seeds.insert(g.range(f));
  }
  for (VertexId v : seeds.members()) {
    const Path p = path_into_cycle(g, v);
    for (EdgeId e : p.edges()) chosen[e] = true;
  }

  auto current = [&] {
    std::vector<EdgeId> es;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (chosen[e]) es.push_back(e);
    return es;
  };
  const VertexSet base_vertices = VertexSet::of(g.vertex_count(), v_set);

  // Give every vertex that lies on exactly one cycle a second one. Adding
  // cycles can create new such vertices, so repeat to a fixed point.
  for (;;) {
    auto es = current();
    DirectedGraph sub = subgraph(g, base_vertices, es);
    auto w_sub = condition_K_witness(sub);
    if (!w_sub) return sub;
    Path mu = first_return_paths(sub, *w_sub, sub.vertex_count()).front();

    std::optional<Path> best;
    for (std::size_t n = 0; n < mu.length(); ++n) {
      EdgeId mu_n = g.edge_by_id(sub.edge(mu.edge(n)).id);
      VertexId x = g.source(mu_n);
      auto nu = cycle_avoiding(g, x, mu_n);
      if (nu && (!best || nu->length() < best->length())) best = nu;
    }
    if (!best)
      throw ContractViolation("jeong_park_subgraph: no second cycle through the cycle at " +
                              sub.vertex_id(*w_sub));
    for (EdgeId e : best->edges()) chosen[e] = true;
  }
}

DirectedGraph add_tails(const DirectedGraph& g, std::size_t depth) {
  if (depth == 0) throw ContractViolation("add_tails: depth must be positive");
  DirectedGraph out = g;
  if (g.truncated_tails()) out.mark_truncated_tails();
  auto fresh_vertex = [&](std::string id) {
    while (out.find_vertex(id)) id += '_';
    return out.add_vertex(id);
  };
  auto fresh_edge = [&](std::string id, VertexId s, VertexId r) {
    while (out.find_edge(id)) id += '_';
    return out.add_edge(id, s, r);
  };
  auto original_sinks = sinks(g);
  for (VertexId w : original_sinks) {
    VertexId prev = w;
    for (std::size_t k = 1; k <= depth; ++k) {
      std::string tag = g.vertex_id(w) + "_" + std::to_string(k);
      VertexId t = fresh_vertex("t_" + tag);
      fresh_edge("tail_" + tag, prev, t);
      prev = t;
    }
  }
  if (!original_sinks.empty()) out.mark_truncated_tails();
  return out;
}

}  // namespace graphck
