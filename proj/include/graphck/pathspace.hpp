#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphck/formal_sum.hpp"
#include "graphck/graph.hpp"
#include "graphck/sparse_matrix.hpp"

namespace graphck {

// An operator on the truncated path space together with a bound on how far
// it climbs. Applied to xi_x it never passes through a path longer than
// |x| + reach, and the result has length between |x| + net_min and
// |x| + net_max. Hence its matrix is exact on columns with |x| <= N - reach.
struct RepOperator {
  SparseMatrix matrix;
  long reach = 0;
  long net_max = 0;
  long net_min = 0;
};

// a * b applies b first.
RepOperator operator*(const RepOperator& a, const RepOperator& b);
RepOperator operator+(const RepOperator& a, const RepOperator& b);
RepOperator operator-(const RepOperator& a, const RepOperator& b);
RepOperator operator*(const Rational& c, const RepOperator& a);
RepOperator adjoint(const RepOperator& a);

// Default cap on the basis size; GRAPHCK_MAX_BASIS overrides it.
inline constexpr std::size_t kDefaultMaxBasis = 200'000;
std::size_t max_basis_from_env();

// Span of xi_mu for paths of length <= N, with T_e xi_mu = xi_{e mu} (zero
// when not composable or when |e mu| > N) and Q_v xi_mu = [s(mu) = v] xi_mu.
class TruncatedRep {
 public:
  TruncatedRep(const DirectedGraph& g, std::size_t cutoff, std::size_t max_basis);

  const DirectedGraph& graph() const { return graph_; }
  std::size_t cutoff() const { return cutoff_; }
  const std::vector<Path>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<std::size_t> index_of(const Path& p) const;
  std::size_t length_of(std::size_t index) const { return basis_[index].length(); }

  const RepOperator& T(EdgeId e) const { return edge_ops_.at(e); }
  const RepOperator& Q(VertexId v) const { return vertex_ops_.at(v); }
  RepOperator identity() const;
  RepOperator zero() const;
  // T_mu; Q_v for a vertex.
  RepOperator T_path(const Path& mu) const;
  // T_alpha T_beta^* (untensored words only).
  RepOperator word(const Word& w) const;
  RepOperator sum(const FormalSum& a) const;

  bool exact_column(const RepOperator& a, std::size_t column) const;
  // Equal on every column exact for both.
  bool agree(const RepOperator& a, const RepOperator& b) const;
  // Self-adjoint and idempotent on the exact region.
  bool is_projection(const RepOperator& p) const;

 private:
  DirectedGraph graph_;
  std::size_t cutoff_;
  std::vector<Path> basis_;
  std::vector<RepOperator> edge_ops_;
  std::vector<RepOperator> vertex_ops_;
};

TruncatedRep build_rep(const DirectedGraph& g, std::size_t cutoff);

// Compares a (in rep ra) with b (in rep rb) on the paths that are exact
// columns of a in ra, matching basis elements by path.
bool agree_across(const TruncatedRep& ra, const RepOperator& a, const TruncatedRep& rb,
                  const RepOperator& b);

// Delta_mu = T_mu T_mu^* - sum_{e in r(mu)E^1} T_{mu e} T_{mu e}^*.
RepOperator delta(const TruncatedRep& rep, const Path& mu);
// T_mu Delta_{r(mu)} T_nu^*.
RepOperator matrix_unit(const TruncatedRep& rep, const Path& mu, const Path& nu);
// Matrix-unit relations for all paths of length < p: theta_{mu,nu} is the
// elementary matrix at (mu, nu), products multiply as matrix units, and
// theta_{mu,nu}^* = theta_{nu,mu}.
bool check_matrix_units(const TruncatedRep& rep, std::size_t p);
// Delta_mu = T_mu Delta_{r(mu)} T_mu^* and Delta_mu Delta_nu = 0 for mu != nu,
// over all paths of length < p.
bool check_delta_identities(const TruncatedRep& rep, std::size_t p);

// Phi_m = sum_{mu in E^{<m}} Delta_mu.
RepOperator phi_projection(const TruncatedRep& rep, std::size_t m);
// Phi_m T_alpha T_beta^* Phi_m = sum_{tau: |alpha tau|, |beta tau| < m}
// theta_{alpha tau, beta tau}.
bool check_compression_display(const TruncatedRep& rep, std::size_t m, const Word& w);

// P_m(t_mu t_nu^*) = sum kappa0(|mu tau| - m, |nu tau| - m) theta_{mu tau, nu tau}
// over m <= |mu tau|, |nu tau| < 2m; Q_m shifts the window and the kappa
// arguments by ceil(m/2). Throws ContractViolation unless
// N >= 2m + max(|mu|, |nu|) (+ ceil(m/2) for Q_m).
RepOperator pm_map(const TruncatedRep& rep, std::size_t m, const Word& w);
RepOperator qm_map(const TruncatedRep& rep, std::size_t m, const Word& w);
// The same maps as M * ((Phi_b - Phi_a) T_mu T_nu^* (Phi_b - Phi_a)), with
// M(x, y) = kappa0(|x| - a, |y| - a).
RepOperator pm_map_compression(const TruncatedRep& rep, std::size_t m, const Word& w);
RepOperator qm_map_compression(const TruncatedRep& rep, std::size_t m, const Word& w);

}  // namespace graphck
