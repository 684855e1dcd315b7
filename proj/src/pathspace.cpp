#include "graphck/pathspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "graphck/errors.hpp"
#include "graphck/kappa.hpp"

namespace graphck {

RepOperator operator*(const RepOperator& a, const RepOperator& b) {
  return {a.matrix * b.matrix, std::max(b.reach, b.net_max + a.reach), a.net_max + b.net_max,
          a.net_min + b.net_min};
}

RepOperator operator+(const RepOperator& a, const RepOperator& b) {
  return {a.matrix + b.matrix, std::max(a.reach, b.reach), std::max(a.net_max, b.net_max),
          std::min(a.net_min, b.net_min)};
}

RepOperator operator-(const RepOperator& a, const RepOperator& b) {
  return a + Rational(-1) * b;
}

RepOperator operator*(const Rational& c, const RepOperator& a) {
  return {c * a.matrix, a.reach, a.net_max, a.net_min};
}

RepOperator adjoint(const RepOperator& a) {
  return {a.matrix.transpose(), a.reach - a.net_min, -a.net_min, -a.net_max};
}

std::size_t max_basis_from_env() {
  const char* s = std::getenv("GRAPHCK_MAX_BASIS");
  if (s == nullptr || *s == '\0') return kDefaultMaxBasis;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0' || v == 0)
    throw PreconditionError("GRAPHCK_MAX_BASIS must be a positive integer");
  return static_cast<std::size_t>(v);
}

TruncatedRep::TruncatedRep(const DirectedGraph& g, std::size_t cutoff, std::size_t max_basis)
    : graph_(g), cutoff_(cutoff) {
  if (cutoff == 0) throw ContractViolation("build_rep: N must be at least 1");
  try {
    basis_ = paths(g, 0, cutoff + 1, max_basis);
  } catch (const ResourceError&) {
    throw ResourceError("path-space basis exceeds " + std::to_string(max_basis) +
                        " paths (N = " + std::to_string(cutoff) +
                        "); raise GRAPHCK_MAX_BASIS or lower the truncation");
  }
  std::sort(basis_.begin(), basis_.end());

  const std::size_t n = basis_.size();
  edge_ops_.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    RepOperator t{SparseMatrix(n), 1, 1, 1};
    const Path ep = g.edge_path(e);
    for (std::size_t j = 0; j < n; ++j) {
      const Path& x = basis_[j];
      if (x.source() != g.range(e) || x.length() + 1 > cutoff) continue;
      t.matrix.add(*index_of(ep.concat(x)), j, 1);
    }
    edge_ops_.push_back(std::move(t));
  }
  vertex_ops_.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    RepOperator q{SparseMatrix(n), 0, 0, 0};
    for (std::size_t j = 0; j < n; ++j)
      if (basis_[j].source() == v) q.matrix.add(j, j, 1);
    vertex_ops_.push_back(std::move(q));
  }
}

std::optional<std::size_t> TruncatedRep::index_of(const Path& p) const {
  auto it = std::lower_bound(basis_.begin(), basis_.end(), p);
  if (it == basis_.end() || !(*it == p)) return std::nullopt;
  return static_cast<std::size_t>(it - basis_.begin());
}

RepOperator TruncatedRep::identity() const { return {SparseMatrix::identity(dim()), 0, 0, 0}; }

RepOperator TruncatedRep::zero() const { return {SparseMatrix(dim()), 0, 0, 0}; }

RepOperator TruncatedRep::T_path(const Path& mu) const {
  if (!graph_.is_valid(mu)) throw ContractViolation("T_path: path is not in the graph");
  if (mu.is_vertex()) return Q(mu.source());
  RepOperator out = T(mu.edge(0));
  for (std::size_t i = 1; i < mu.length(); ++i) out = out * T(mu.edge(i));
  return out;
}

RepOperator TruncatedRep::word(const Word& w) const {
  if (w.tensored()) throw ContractViolation("the path-space representation takes untensored words");
  return T_path(w.alpha) * adjoint(T_path(w.beta));
}

RepOperator TruncatedRep::sum(const FormalSum& a) const {
  RepOperator out = zero();
  for (const auto& [w, c] : a.terms()) out = out + c * word(w);
  return out;
}

bool TruncatedRep::exact_column(const RepOperator& a, std::size_t column) const {
  return static_cast<long>(basis_[column].length()) + a.reach <= static_cast<long>(cutoff_);
}

bool TruncatedRep::agree(const RepOperator& a, const RepOperator& b) const {
  return columns_agree(a.matrix, b.matrix,
                       [&](std::size_t j) { return exact_column(a, j) && exact_column(b, j); });
}

bool TruncatedRep::is_projection(const RepOperator& p) const {
  return agree(p, adjoint(p)) && agree(p * p, p);
}

TruncatedRep build_rep(const DirectedGraph& g, std::size_t cutoff) {
  return TruncatedRep(g, cutoff, max_basis_from_env());
}

bool agree_across(const TruncatedRep& ra, const RepOperator& a, const TruncatedRep& rb,
                  const RepOperator& b) {
  if (!(ra.graph() == rb.graph())) throw ContractViolation("agree_across: different graphs");
  for (std::size_t j = 0; j < ra.dim(); ++j) {
    if (!ra.exact_column(a, j)) continue;
    auto jb = rb.index_of(ra.basis()[j]);
    if (!jb || !rb.exact_column(b, *jb)) continue;
    SparseMatrix::Column mapped;
    for (const auto& [i, v] : a.matrix.column(j)) {
      auto ib = rb.index_of(ra.basis()[i]);
      if (!ib) return false;
      mapped.push_back({static_cast<std::uint32_t>(*ib), v});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (mapped != b.matrix.column(*jb)) return false;
  }
  return true;
}

RepOperator delta(const TruncatedRep& rep, const Path& mu) {
  if (mu.length() >= rep.cutoff())
    throw ContractViolation("delta: |mu| must be below the truncation");
  const DirectedGraph& g = rep.graph();
  RepOperator tm = rep.T_path(mu);
  RepOperator out = tm * adjoint(tm);
  for (EdgeId e : g.out_edges(mu.range())) {
    RepOperator te = rep.T_path(g.extend(mu, e));
    out = out - te * adjoint(te);
  }
  return out;
}

RepOperator matrix_unit(const TruncatedRep& rep, const Path& mu, const Path& nu) {
  if (mu.range() != nu.range()) throw ContractViolation("matrix_unit: r(mu) != r(nu)");
  return rep.T_path(mu) * delta(rep, Path::at_vertex(mu.range())) * adjoint(rep.T_path(nu));
}

namespace {

std::vector<Path> short_paths(const TruncatedRep& rep, std::size_t p) {
  if (p > rep.cutoff()) throw ContractViolation("path length bound exceeds the truncation");
  std::vector<Path> out;
  for (const Path& x : rep.basis())
    if (x.length() < p) out.push_back(x);
  return out;
}

// The elementary matrix at (row, col) on every exact column.
bool is_elementary(const TruncatedRep& rep, const RepOperator& a, std::size_t row,
                   std::size_t col) {
  for (std::size_t j = 0; j < rep.dim(); ++j) {
    if (!rep.exact_column(a, j)) continue;
    const auto& c = a.matrix.column(j);
    if (j == col) {
      if (c.size() != 1 || c[0].first != row || c[0].second != 1) return false;
    } else if (!c.empty()) {
      return false;
    }
  }
  return rep.exact_column(a, col);
}

}  // namespace

bool check_matrix_units(const TruncatedRep& rep, std::size_t p) {
  const std::vector<Path> ps = short_paths(rep, p);
  struct Unit {
    std::size_t mu, nu;
    RepOperator op;
  };
  std::vector<Unit> units;
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = 0; b < ps.size(); ++b)
      if (ps[a].range() == ps[b].range()) units.push_back({a, b, matrix_unit(rep, ps[a], ps[b])});

  auto find = [&](std::size_t mu, std::size_t nu) -> const RepOperator& {
    for (const Unit& u : units)
      if (u.mu == mu && u.nu == nu) return u.op;
    throw ContractViolation("check_matrix_units: missing unit");
  };

  for (const Unit& u : units) {
    if (!is_elementary(rep, u.op, *rep.index_of(ps[u.mu]), *rep.index_of(ps[u.nu]))) return false;
    if (!rep.agree(adjoint(u.op), find(u.nu, u.mu))) return false;
  }
  for (const Unit& x : units) {
    for (const Unit& y : units) {
      RepOperator prod = x.op * y.op;
      RepOperator expected = x.nu == y.mu ? find(x.mu, y.nu) : rep.zero();
      if (!rep.agree(prod, expected)) return false;
    }
  }
  return true;
}

bool check_delta_identities(const TruncatedRep& rep, std::size_t p) {
  const std::vector<Path> ps = short_paths(rep, p);
  std::vector<RepOperator> ds;
  for (const Path& mu : ps) {
    RepOperator d = delta(rep, mu);
    RepOperator tm = rep.T_path(mu);
    if (!rep.agree(d, tm * delta(rep, Path::at_vertex(mu.range())) * adjoint(tm))) return false;
    if (!rep.is_projection(d)) return false;
    ds.push_back(std::move(d));
  }
  for (std::size_t a = 0; a < ds.size(); ++a)
    for (std::size_t b = 0; b < ds.size(); ++b)
      if (a != b && !rep.agree(ds[a] * ds[b], rep.zero())) return false;
  return true;
}

RepOperator phi_projection(const TruncatedRep& rep, std::size_t m) {
  if (m == 0 || m > rep.cutoff()) throw ContractViolation("phi_projection: need 1 <= m <= N");
  // Phi_m = sum_v Delta_v + sum_e T_e Phi_{m-1} T_e^*.
  const DirectedGraph& g = rep.graph();
  RepOperator base = rep.zero();
  for (VertexId v = 0; v < g.vertex_count(); ++v) base = base + delta(rep, Path::at_vertex(v));
  RepOperator out = base;
  for (std::size_t k = 1; k < m; ++k) {
    RepOperator next = base;
    for (EdgeId e = 0; e < g.edge_count(); ++e) next = next + rep.T(e) * out * adjoint(rep.T(e));
    out = std::move(next);
  }
  return out;
}

namespace {

// Paths tau from r(w) such that |alpha tau| and |beta tau| lie in [lo, hi).
std::vector<Path> window_tails(const TruncatedRep& rep, const Word& w, std::size_t lo,
                               std::size_t hi) {
  const std::size_t longer = std::max(w.alpha.length(), w.beta.length());
  const std::size_t shorter = std::min(w.alpha.length(), w.beta.length());
  std::vector<Path> out;
  if (longer + 1 > hi) return out;
  const std::size_t from = lo > shorter ? lo - shorter : 0;
  for (const Path& tau : paths_from(rep.graph(), w.alpha.range(), from, hi - longer))
    out.push_back(tau);
  return out;
}

RepOperator window_display(const TruncatedRep& rep, std::size_t m, const Word& w,
                           std::size_t offset) {
  // kappa only sees |tau|, so the sum over tau is grouped by length:
  // sum_{|tau| = k} theta_{alpha tau, beta tau} = T_alpha D_k T_beta^* with
  // D_k = sum_{|tau| = k} T_tau Delta_{r(tau)} T_tau^*.
  const DirectedGraph& g = rep.graph();
  const std::size_t la = w.alpha.length(), lb = w.beta.length();
  const std::size_t longer = std::max(la, lb), shorter = std::min(la, lb);
  RepOperator out = rep.zero();
  if (longer + 1 > offset + m) return out;
  const std::size_t from = offset > shorter ? offset - shorter : 0;
  const std::size_t to = offset + m - longer;
  RepOperator level = rep.zero();
  for (VertexId v = 0; v < g.vertex_count(); ++v) level = level + delta(rep, Path::at_vertex(v));
  RepOperator ta = rep.T_path(w.alpha);
  RepOperator tb = adjoint(rep.T_path(w.beta));
  for (std::size_t k = 0; k < to; ++k) {
    if (k >= from) {
      Rational c = kappa0(m, static_cast<long>(la + k) - static_cast<long>(offset),
                          static_cast<long>(lb + k) - static_cast<long>(offset));
      if (c != 0) out = out + c * (ta * level * tb);
    }
    if (k + 1 < to) {
      RepOperator next = rep.zero();
      for (EdgeId e = 0; e < g.edge_count(); ++e) next = next + rep.T(e) * level * adjoint(rep.T(e));
      level = std::move(next);
    }
  }
  return out;
}

RepOperator window_compression(const TruncatedRep& rep, std::size_t m, const Word& w,
                               std::size_t offset) {
  RepOperator band = phi_projection(rep, offset + m) - phi_projection(rep, offset);
  RepOperator inner = band * rep.word(w) * band;
  const long off = static_cast<long>(offset);
  inner.matrix = inner.matrix.schur([&](std::size_t i, std::size_t j) {
    return kappa0(m, static_cast<long>(rep.length_of(i)) - off,
                  static_cast<long>(rep.length_of(j)) - off);
  });
  return inner;
}

void check_window(const TruncatedRep& rep, std::size_t m, const Word& w, std::size_t offset,
                  const char* name) {
  if (m == 0) throw ContractViolation(std::string(name) + ": m must be positive");
  if (w.tensored()) throw ContractViolation(std::string(name) + ": untensored word expected");
  const std::size_t need = offset + m + std::max(w.alpha.length(), w.beta.length());
  if (rep.cutoff() < need)
    throw ContractViolation(std::string(name) + ": truncation " + std::to_string(rep.cutoff()) +
                            " too small, need at least " + std::to_string(need));
}

}  // namespace

bool check_compression_display(const TruncatedRep& rep, std::size_t m, const Word& w) {
  RepOperator phi = phi_projection(rep, m);
  RepOperator lhs = phi * rep.word(w) * phi;
  RepOperator rhs = rep.zero();
  for (const Path& tau : window_tails(rep, w, 0, m))
    rhs = rhs + matrix_unit(rep, w.alpha.concat(tau), w.beta.concat(tau));
  return rep.agree(lhs, rhs);
}

RepOperator pm_map(const TruncatedRep& rep, std::size_t m, const Word& w) {
  check_window(rep, m, w, m, "pm_map");
  return window_display(rep, m, w, m);
}

RepOperator qm_map(const TruncatedRep& rep, std::size_t m, const Word& w) {
  check_window(rep, m, w, m + half_ceil(m), "qm_map");
  return window_display(rep, m, w, m + half_ceil(m));
}

RepOperator pm_map_compression(const TruncatedRep& rep, std::size_t m, const Word& w) {
  check_window(rep, m, w, m, "pm_map");
  return window_compression(rep, m, w, m);
}

RepOperator qm_map_compression(const TruncatedRep& rep, std::size_t m, const Word& w) {
  check_window(rep, m, w, m + half_ceil(m), "qm_map");
  return window_compression(rep, m, w, m + half_ceil(m));
}

}  // namespace graphck
