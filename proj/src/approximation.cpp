#include "graphck/approximation.hpp"

#include <algorithm>

#include "graphck/errors.hpp"
#include "graphck/homomorphisms.hpp"

namespace graphck {

namespace {

// Largest literal sum the brute route will build (paths from r(mu) below the
// top of the Q_m window).
constexpr long kMaxBrutePaths = 20'000;

// Number of paths of each length 0..n-1 starting at v.
std::vector<Integer> path_counts_by_length(const DirectedGraph& g, VertexId v, std::size_t n) {
  std::vector<Integer> out;
  std::vector<Integer> at(g.vertex_count());
  at[v] = 1;
  for (std::size_t len = 0; len < n; ++len) {
    Integer total = 0;
    for (const Integer& x : at) total += x;
    out.push_back(total);
    std::vector<Integer> next(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u)
      if (at[u] != 0)
        for (EdgeId e : g.out_edges(u)) next[g.range(e)] += at[u];
    at = std::move(next);
  }
  return out;
}

// P_m or Q_m of t_mu t_nu^* pushed through Lambda into E(m).
FormalSum windowed_image(const BlowupGraph& b, const Path& mu, const Path& nu,
                         std::size_t offset) {
  const std::size_t m = b.m;
  const std::size_t longer = std::max(mu.length(), nu.length());
  const std::size_t shorter = std::min(mu.length(), nu.length());
  FormalSum out;
  if (longer >= offset + m) return out;
  const std::size_t from = offset > shorter ? offset - shorter : 0;
  for (const Path& tau : paths_from(b.base, mu.range(), from, offset + m - longer)) {
    Path a = mu.concat(tau);
    Path c = nu.concat(tau);
    Rational k = kappa0(m, static_cast<long>(a.length() - offset),
                        static_cast<long>(c.length() - offset));
    if (k != 0) out += k * lambda_map(b, offset, a, c);
  }
  return out;
}

void check_arguments(const DirectedGraph& g, std::size_t m, const Path& mu, const Path& nu) {
  if (has_sinks(g))
    throw PreconditionError("prop26_difference needs a graph without sinks; " +
                            g.vertex_id(sinks(g).front()) + " is a sink");
  if (!g.is_valid(mu) || !g.is_valid(nu))
    throw ContractViolation("prop26_difference: path not in the graph");
  if (mu.range() != nu.range()) throw ContractViolation("prop26_difference: r(mu) != r(nu)");
  if (m <= mu.length() || m <= nu.length())
    throw ContractViolation("prop26_difference: m must exceed |mu| and |nu|");
}

}  // namespace

const char* to_string(Prop26Route route) {
  switch (route) {
    case Prop26Route::Auto:
      return "auto";
    case Prop26Route::Brute:
      return "brute";
    case Prop26Route::Collapsed:
      return "collapsed";
  }
  return "?";
}

FormalSum prop26_brute(const BlowupGraph& b, const Path& mu, const Path& nu) {
  const std::size_t m = b.m;
  FormalSum out = windowed_image(b, mu, nu, m);
  out += windowed_image(b, mu, nu, m + half_ceil(m));
  out -= iota_word(b, Word::of(mu, nu));
  return out;
}

FormalSum prop26_collapsed(const BlowupGraph& b, const Path& mu, const Path& nu) {
  const KCoefficients k = k_coefficients(b.m, mu.length(), nu.length());
  FormalSum out;
  for (const Path& alpha : paths_from(b.base, mu.range(), 0, b.m)) {
    Rational c = k.values[alpha.length()] - 1;
    if (c != 0)
      out.add(Word::of(embed_path(b, mu.concat(alpha)), embed_path(b, nu.concat(alpha))), c);
  }
  return out;
}

Prop26Result prop26_difference(const DirectedGraph& g, std::size_t m, const Path& mu,
                               const Path& nu, Prop26Route route,
                               std::size_t max_blowup_vertices) {
  check_arguments(g, m, mu, nu);
  Prop26Result res;
  res.m = m;
  res.mu = mu;
  res.nu = nu;
  res.k = k_coefficients(m, mu.length(), nu.length());
  res.d = res.k.d;

  const std::vector<Integer> counts = path_counts_by_length(g, mu.range(), m);
  bool first = true;
  for (std::size_t i = 0; i < m; ++i) {
    Rational defect = abs(1 - res.k.values[i]);
    res.table.push_back({i, res.k.values[i], defect, counts[i]});
    if (counts[i] != 0 && (first || defect > res.table_max)) {
      res.table_max = defect;
      first = false;
    }
  }

  Integer blowup_vertices = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) blowup_vertices += count_paths_from(g, v, m);
  const bool blowup_ok = blowup_vertices <= static_cast<long>(max_blowup_vertices);
  const bool brute_ok =
      blowup_ok && count_paths_from(g, mu.range(), 2 * m + half_ceil(m)) <= kMaxBrutePaths;

  if (route == Prop26Route::Brute && !brute_ok)
    throw ResourceError("prop26_difference: the literal sums are too large for the brute route");
  if (route == Prop26Route::Collapsed && !blowup_ok) {
    res.route = Prop26Route::Collapsed;
    res.max_coefficient = res.table_max;
    return res;
  }
  if (route == Prop26Route::Auto) {
    route = brute_ok ? Prop26Route::Brute : Prop26Route::Collapsed;
    if (!blowup_ok) {
      res.route = Prop26Route::Collapsed;
      res.max_coefficient = res.table_max;
      return res;
    }
  }
  res.route = route;

  const BlowupGraph b = blowup_graph(g, m);
  FormalSum collapsed = prop26_collapsed(b, mu, nu);
  if (route == Prop26Route::Brute) {
    FormalSum brute = prop26_brute(b, mu, nu);
    res.cross_checked = true;
    res.routes_agree = equal_in(b.graph, brute, collapsed, AlgebraMode::CuntzKrieger);
    res.difference = std::move(brute);
  } else {
    res.difference = std::move(collapsed);
  }
  res.max_coefficient =
      canonical_form(b.graph, *res.difference, AlgebraMode::CuntzKrieger).max_abs_coefficient();
  return res;
}

}  // namespace graphck
