#include "graphck/homomorphisms.hpp"

#include <algorithm>

#include "graphck/errors.hpp"

namespace graphck {

TckCheck verify_tck_family(const DirectedGraph& source, const GeneratorImages& images,
                           const DirectedGraph& target, AlgebraMode mode) {
  if (images.vertex.size() != source.vertex_count() || images.edge.size() != source.edge_count())
    throw ContractViolation("verify_tck_family: images missing for some generators");
  auto fail = [](std::string what) { return TckCheck{false, std::move(what)}; };
  auto eq = [&](const FormalSum& a, const FormalSum& b) { return equal_in(target, a, b, mode); };
  auto zero = [&](const FormalSum& a) { return is_zero_in(target, a, mode); };

  for (VertexId v = 0; v < source.vertex_count(); ++v) {
    const FormalSum& q = images.vertex[v];
    if (!eq(q.adjoint(), q)) return fail("q_" + source.vertex_id(v) + " is not self-adjoint");
    if (!eq(q * q, q)) return fail("q_" + source.vertex_id(v) + " is not idempotent");
  }
  for (VertexId v = 0; v < source.vertex_count(); ++v)
    for (VertexId w = v + 1; w < source.vertex_count(); ++w)
      if (!zero(images.vertex[v] * images.vertex[w]))
        return fail("q_" + source.vertex_id(v) + " q_" + source.vertex_id(w) + " != 0");

  std::vector<FormalSum> ranges(source.edge_count());
  for (EdgeId e = 0; e < source.edge_count(); ++e) {
    const FormalSum& t = images.edge[e];
    if (!eq(t.adjoint() * t, images.vertex[source.range(e)]))
      return fail("t_" + source.edge(e).id + "^* t_" + source.edge(e).id + " != q_" +
                  source.vertex_id(source.range(e)));
    ranges[e] = t * t.adjoint();
  }
  for (VertexId v = 0; v < source.vertex_count(); ++v) {
    auto outs = source.out_edges(v);
    const FormalSum& q = images.vertex[v];
    FormalSum total;
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string& ei = source.edge(outs[i]).id;
      if (!eq(q * ranges[outs[i]], ranges[outs[i]]))
        return fail("t_" + ei + " t_" + ei + "^* is not below q_" + source.vertex_id(v));
      for (std::size_t j = i + 1; j < outs.size(); ++j)
        if (!zero(ranges[outs[i]] * ranges[outs[j]]))
          return fail("range projections of " + ei + " and " + source.edge(outs[j]).id +
                      " are not orthogonal");
      total += ranges[outs[i]];
    }
    if (mode == AlgebraMode::CuntzKrieger && !outs.empty() && !eq(total, q))
      return fail("CK2 at " + source.vertex_id(v) + ": q_v != sum of t_e t_e^*");
  }
  return {};
}

// ---- iota_m ---------------------------------------------------------------

FormalSum iota_vertex_image(const BlowupGraph& b, VertexId v) {
  FormalSum out;
  for (VertexId x = 0; x < b.vertex_paths.size(); ++x)
    if (b.vertex_paths[x].source() == v) out.add(Word::vertex(x), 1);
  return out;
}

FormalSum iota_edge_image(const BlowupGraph& b, EdgeId e) {
  FormalSum out;
  for (EdgeId y = 0; y < b.graph.edge_count(); ++y)
    if (b.edge_base[y] == e) out.add(Word::edge(b.graph, y), 1);
  return out;
}

GeneratorImages iota_images(const BlowupGraph& b) {
  GeneratorImages out;
  for (VertexId v = 0; v < b.base.vertex_count(); ++v) out.vertex.push_back(iota_vertex_image(b, v));
  for (EdgeId e = 0; e < b.base.edge_count(); ++e) out.edge.push_back(iota_edge_image(b, e));
  return out;
}

namespace {

FormalSum iota_path(const BlowupGraph& b, const Path& mu) {
  FormalSum out = iota_vertex_image(b, mu.source());
  for (EdgeId e : mu.edges()) out = out * iota_edge_image(b, e);
  return out;
}

}  // namespace

FormalSum iota_word(const BlowupGraph& b, const Word& w) {
  if (w.unit) throw ContractViolation("iota_m is not defined on tensored words");
  return iota_path(b, w.alpha) * iota_path(b, w.beta).adjoint();
}

// ---- j_m ------------------------------------------------------------------

namespace {

void require_no_sinks(const DirectedGraph& g) {
  auto s = sinks(g);
  if (!s.empty())
    throw PreconditionError("j_m needs a graph without sinks; " + g.vertex_id(s.front()) +
                            " is a sink");
}

}  // namespace

FormalSum jm_vertex_image(const BlowupGraph& b, VertexId x) {
  require_no_sinks(b.base);
  const Path& mu = b.vertex_paths.at(x);
  Path r = Path::at_vertex(mu.range());
  return FormalSum(Word{r, r, MatrixUnit{mu, mu}});
}

FormalSum jm_edge_image(const BlowupGraph& b, EdgeId y) {
  require_no_sinks(b.base);
  EdgeId e = b.edge_base.at(y);
  const Path& mu = b.vertex_paths[b.edge_target[y]];
  Path emu = b.base.edge_path(e).concat(mu);
  Path r = Path::at_vertex(mu.range());
  if (mu.length() + 1 == b.m)
    return FormalSum(Word{emu, r, MatrixUnit{Path::at_vertex(b.base.source(e)), mu}});
  return FormalSum(Word{r, r, MatrixUnit{emu, mu}});
}

GeneratorImages jm_images(const BlowupGraph& b) {
  require_no_sinks(b.base);
  GeneratorImages out;
  for (VertexId x = 0; x < b.graph.vertex_count(); ++x) out.vertex.push_back(jm_vertex_image(b, x));
  for (EdgeId y = 0; y < b.graph.edge_count(); ++y) out.edge.push_back(jm_edge_image(b, y));
  return out;
}

// ---- Lambda ----------------------------------------------------------------

FormalSum lambda_map(const BlowupGraph& b, std::size_t p, const Path& mu, const Path& nu) {
  auto in_window = [&](const Path& x) { return p <= x.length() && x.length() < p + b.m; };
  if (!in_window(mu) || !in_window(nu))
    throw ContractViolation("lambda_map: path lengths must lie in [p, p+m)");
  if (mu.range() != nu.range()) throw ContractViolation("lambda_map: r(mu) != r(nu)");
  return FormalSum(Word::of(embed_path(b, mu), embed_path(b, nu)));
}

// ---- quasidiagonal approximate identity --------------------------------------

std::vector<Path> gabe_paths(const DirectedGraph& g, const VertexSet& h, const VertexSet& x) {
  std::vector<Path> out;
  std::vector<Path> level;
  for (VertexId v : x.members())
    if (!h.contains(v)) level.push_back(Path::at_vertex(v));
  // E/H is acyclic, so paths inside X \ H have length < |E^0|.
  for (std::size_t len = 0; !level.empty(); ++len) {
    if (len > g.vertex_count()) throw ContractViolation("gabe_paths: cycle outside H");
    std::vector<Path> next;
    for (const Path& p : level) {
      for (EdgeId e : g.out_edges(p.range())) {
        VertexId r = g.range(e);
        if (h.contains(r)) {
          out.push_back(p.append(e, r));
        } else if (x.contains(r)) {
          next.push_back(p.append(e, r));
        }
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FormalSum gabe_approximate_identity(const DirectedGraph& g, const VertexSet& h,
                                    const VertexSet& x) {
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw ContractViolation("gabe_approximate_identity: H = " + format_vertex_set(g, h) +
                            " is not hereditary and saturated");
  if (!is_acyclic(quotient_graph(g, h)))
    throw PreconditionError("gabe_approximate_identity: the quotient graph E/H has a cycle");
  FormalSum out;
  for (VertexId v : x.members())
    if (h.contains(v)) out.add(Word::vertex(v), 1);
  for (const Path& a : gabe_paths(g, h, x)) out.add(Word::of(a, a), 1);
  return out;
}

bool commutator_is_zero(const DirectedGraph& g, const FormalSum& e, const Word& w) {
  FormalSum fw(w);
  return is_zero_in(g, e * fw - fw * e, AlgebraMode::CuntzKrieger);
}

VertexSet word_vertices(const DirectedGraph& g, const Word& w) {
  VertexSet out(g.vertex_count());
  for (VertexId v : w.alpha.vertices()) out.insert(v);
  for (VertexId v : w.beta.vertices()) out.insert(v);
  return out;
}

}  // namespace graphck
