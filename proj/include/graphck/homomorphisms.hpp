#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphck/constructions.hpp"
#include "graphck/formal_sum.hpp"

namespace graphck {

// Images of the generators q_v, t_e of a source graph, as sums over some
// target graph.
struct GeneratorImages {
  std::vector<FormalSum> vertex;
  std::vector<FormalSum> edge;
};

struct TckCheck {
  bool ok = true;
  std::string failed_relation;  // empty when ok
  explicit operator bool() const { return ok; }
};

// Checks that the images form a Toeplitz (or Cuntz-Krieger) family of
// `source` inside the algebra of `target`: vertex images are mutually
// orthogonal projections, t_e^* t_e = q_{r(e)}, the range projections at
// each vertex are mutually orthogonal subprojections of q_v, and in CK mode
// they sum to q_v at every non-sink.
TckCheck verify_tck_family(const DirectedGraph& source, const GeneratorImages& images,
                           const DirectedGraph& target, AlgebraMode mode);

// iota_m(q_v) = sum_{mu in vE^{<m}} q_mu,  iota_m(t_e) = sum_{(e,mu)} t_{(e,mu)}.
FormalSum iota_vertex_image(const BlowupGraph& b, VertexId v);
FormalSum iota_edge_image(const BlowupGraph& b, EdgeId e);
GeneratorImages iota_images(const BlowupGraph& b);
// iota_m extended multiplicatively to s_mu s_nu^*.
FormalSum iota_word(const BlowupGraph& b, const Word& w);

// j_m on the generators of E(m), as tensored words over the base graph.
// Throws PreconditionError if the base graph has a sink.
FormalSum jm_vertex_image(const BlowupGraph& b, VertexId x);
FormalSum jm_edge_image(const BlowupGraph& b, EdgeId y);
GeneratorImages jm_images(const BlowupGraph& b);

// Lambda_p^{p+m}(theta_{mu,nu}) = t_{i_m(mu)} t_{i_m(nu)}^*.
FormalSum lambda_map(const BlowupGraph& b, std::size_t p, const Path& mu, const Path& nu);

// Paths e_1...e_k with every s(e_i) in X \ H and r(e_k) in H.
std::vector<Path> gabe_paths(const DirectedGraph& g, const VertexSet& h, const VertexSet& x);

// e_X = sum_{v in X cap H} p_v + sum_alpha s_alpha s_alpha^*. Requires H
// hereditary and saturated (ContractViolation) and E/H acyclic
// (PreconditionError).
FormalSum gabe_approximate_identity(const DirectedGraph& g, const VertexSet& h,
                                    const VertexSet& x);

// e w - w e = 0 in C*(E).
bool commutator_is_zero(const DirectedGraph& g, const FormalSum& e, const Word& w);

// Vertices met by the paths of w.
VertexSet word_vertices(const DirectedGraph& g, const Word& w);

}  // namespace graphck
