#include "graphck/ktheory.hpp"

#include <algorithm>
#include <cstdint>

#include "graphck/errors.hpp"

namespace graphck {

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

struct Reducer {
  IntMatrix& d;
  IntMatrix& u;
  IntMatrix& v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    d.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    d.swap_cols(a, b);
    v.swap_cols(a, b);
  }
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    d.add_row_multiple(target, source, f);
    u.add_row_multiple(target, source, f);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    d.add_col_multiple(target, source, f);
    v.add_col_multiple(target, source, f);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithDecomposition s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  Reducer r{s.D, s.U, s.V};
  IntMatrix& d = s.D;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    r.swap_rows(t, best->first);
    r.swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        r.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        r.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot; move the smallest one in.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(bi, bj))) bi = t, bj = j;
        r.swap_rows(t, bi);
        r.swap_cols(t, bj);
        continue;
      }
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < rows && !bad; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      r.add_row(t, *bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

bool verify_smith(const IntMatrix& m, const SmithDecomposition& s) {
  if (s.U.rows() != m.rows() || s.U.cols() != m.rows() || s.V.rows() != m.cols() ||
      s.V.cols() != m.cols())
    return false;
  if (!(s.U * m * s.V == s.D)) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j && s.D(i, j) != 0) return false;
  const std::vector<Integer> diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if (i + 1 < diag.size()) {
      if (diag[i] == 0 && diag[i + 1] != 0) return false;
      if (diag[i] != 0 && diag[i + 1] % diag[i] != 0) return false;
    }
  }
  return true;
}

std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows > 8 || cols > 8) throw ContractViolation("invariant_factors_by_minors: at most 8 x 8");
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (abs(m(i, j)) > 1000)
        throw ContractViolation("invariant_factors_by_minors: entries above 1000");

  using Wide = __int128;
  // minor[rmask * 256 + cmask] for rmask, cmask of equal size; rows are taken
  // as the lowest |cmask| rows of rmask in the expansion below.
  std::vector<Wide> minor(std::size_t{1} << 16, 0);
  auto key = [](unsigned rm, unsigned cm) { return (static_cast<std::size_t>(rm) << 8) | cm; };
  std::vector<Integer> delta{1};  // Delta_0
  std::vector<std::vector<unsigned>> masks_by_size(9);
  for (unsigned mask = 0; mask < 256; ++mask)
    masks_by_size[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);
  auto to_integer = [](Wide w) {
    bool neg = w < 0;
    unsigned __int128 x = neg ? static_cast<unsigned __int128>(-w) : static_cast<unsigned __int128>(w);
    Integer out = 0;
    Integer base = 1;
    while (x != 0) {
      out += base * static_cast<unsigned long>(x % 1000000000u);
      base *= 1000000000u;
      x /= 1000000000u;
    }
    return neg ? Integer(-out) : out;
  };

  for (unsigned rm : masks_by_size[0])
    for (unsigned cm : masks_by_size[0]) minor[key(rm, cm)] = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Integer g = 0;
    for (unsigned rm : masks_by_size[k]) {
      if (rm >> rows) continue;
      const unsigned top = 31u - static_cast<unsigned>(__builtin_clz(rm));
      const unsigned rest = rm & ~(1u << top);
      for (unsigned cm : masks_by_size[k]) {
        if (cm >> cols) continue;
        // Expansion along row `top`, the last row of the minor.
        Wide det = 0;
        long pos = static_cast<long>(k) - 1;
        for (int c = 7; c >= 0; --c) {
          if (!(cm & (1u << c))) continue;
          Wide sub = minor[key(rest, cm & ~(1u << c))];
          Wide term = static_cast<Wide>(m(top, static_cast<std::size_t>(c)).get_si()) * sub;
          det += ((static_cast<long>(k) - 1 + pos) % 2 == 0) ? term : -term;
          --pos;
        }
        minor[key(rm, cm)] = det;
        if (det != 0) g = gcd(g, to_integer(det));
      }
    }
    if (g == 0) break;
    delta.push_back(g);
  }
  std::vector<Integer> out;
  for (std::size_t k = 1; k < delta.size(); ++k) out.push_back(delta[k] / delta[k - 1]);
  return out;
}

namespace {

void require_k_theory_graph(const DirectedGraph& g) {
  if (g.truncated_tails())
    throw PreconditionError(
        "graph was produced by add_tails; its K-theory differs from the original graph's");
  auto s = sinks(g);
  if (!s.empty())
    throw PreconditionError("graph has sinks (" + g.vertex_id(s.front()) +
                            "); K-theory is computed for graphs without sinks only. add_tails "
                            "removes sinks, but the result is a truncation of an infinite graph");
}

IntMatrix phi_matrix(const DirectedGraph& g) {
  return IntMatrix::identity(g.vertex_count()) - adjacency_matrix(g).transpose();
}

}  // namespace

KTheoryResult graph_k_theory(const DirectedGraph& g) {
  require_k_theory_graph(g);
  KTheoryResult res;
  res.phi = phi_matrix(g);
  res.smith = smith_normal_form(res.phi);
  const std::vector<Integer> diag = res.smith.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0) {
      ++res.k0_rank;
      ++res.k1_rank;
      res.k1_basis.push_back(res.smith.V.column(i));
    } else if (diag[i] > 1) {
      res.k0_torsion.push_back(diag[i]);
    }
  }
  return res;
}

IntMatrix induced_endomorphism_matrix(const DirectedGraph& g, std::size_t m) {
  if (m == 0) throw ContractViolation("induced_endomorphism_matrix: m must be positive");
  const std::size_t n = g.vertex_count();
  const IntMatrix at = adjacency_matrix(g).transpose();
  // Horner: S = I + A^t (I + A^t (I + ...)).
  IntMatrix s = IntMatrix::identity(n);
  for (std::size_t j = 1; j < m; ++j) s = IntMatrix::identity(n) + at * s;
  return s;
}

MultiplicationCheck verify_multiplication_by_m(const DirectedGraph& g, std::size_t m,
                                               const std::string& target) {
  const KTheoryResult kt = graph_k_theory(g);
  const std::size_t n = g.vertex_count();
  MultiplicationCheck out;
  out.target = target;
  out.m = m;
  out.k1_basis = kt.k1_basis;
  const IntMatrix s = induced_endomorphism_matrix(g, m);
  const IntMatrix shifted = s - Integer(static_cast<unsigned long>(m)) * IntMatrix::identity(n);
  const std::vector<Integer> diag = kt.smith.diagonal();

  out.k0_pass = true;
  for (VertexId v = 0; v < n && out.k0_pass; ++v) {
    const std::vector<Integer> b = shifted.column(v);
    const std::vector<Integer> ub = kt.smith.U.apply(b);
    std::vector<Integer> z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (diag[i] == 0) {
        if (ub[i] != 0) {
          out.k0_pass = false;
          out.failure = "K0: (S - m) delta_" + g.vertex_id(v) + " is not in the image of 1 - A^t";
          break;
        }
      } else if (ub[i] % diag[i] != 0) {
        out.k0_pass = false;
        out.failure = "K0: (S - m) delta_" + g.vertex_id(v) + " is not in the image of 1 - A^t";
        break;
      } else {
        z[i] = ub[i] / diag[i];
      }
    }
    if (!out.k0_pass) break;
    std::vector<Integer> y = kt.smith.V.apply(z);
    if (kt.phi.apply(y) != b) {
      out.k0_pass = false;
      out.failure = "K0: certificate for " + g.vertex_id(v) + " does not verify";
      break;
    }
    out.k0_certificate.push_back(std::move(y));
  }

  out.k1_pass = true;
  for (const auto& x : kt.k1_basis) {
    std::vector<Integer> sx = s.apply(x);
    for (std::size_t i = 0; i < n; ++i) {
      if (sx[i] != Integer(static_cast<unsigned long>(m)) * x[i]) {
        out.k1_pass = false;
        if (out.failure.empty()) out.failure = "K1: S x != m x on a kernel basis vector";
        break;
      }
    }
    if (!out.k1_pass) break;
  }
  out.pass = out.k0_pass && out.k1_pass;
  return out;
}

bool recheck_certificate(const DirectedGraph& g, const MultiplicationCheck& c) {
  const std::size_t n = g.vertex_count();
  if (!c.pass || c.k0_certificate.size() != n) return false;
  const IntMatrix phi = phi_matrix(g);
  const Integer mm(static_cast<unsigned long>(c.m));
  // S from path enumeration: S(w, v) = |{p in vE^{<m} : r(p) = w}|.
  IntMatrix s(n, n);
  for (VertexId v = 0; v < n; ++v)
    for (const Path& p : paths_from(g, v, 0, c.m)) s(p.range(), v) += 1;
  for (VertexId v = 0; v < n; ++v) {
    std::vector<Integer> b = s.column(v);
    b[v] -= mm;
    if (phi.apply(c.k0_certificate[v]) != b) return false;
  }
  for (const auto& x : c.k1_basis) {
    if (phi.apply(x) != std::vector<Integer>(n, 0)) return false;
    std::vector<Integer> sx = s.apply(x);
    for (std::size_t i = 0; i < n; ++i)
      if (sx[i] != mm * x[i]) return false;
  }
  return true;
}

namespace {

VertexSet translate(const DirectedGraph& from, const VertexSet& s, const DirectedGraph& to) {
  VertexSet out(to.vertex_count());
  for (VertexId v : s.members()) out.insert(to.vertex(from.vertex_id(v)));
  return out;
}

void run_entry(SubquotientReport& report, SubquotientEntry entry, const DirectedGraph& target,
               std::size_t m) {
  if (target.empty()) {
    entry.skipped = "empty graph";
  } else if (has_sinks(target)) {
    entry.skipped = "graph has sinks";
  } else {
    entry.check = verify_multiplication_by_m(target, m, entry.target);
  }
  if (entry.check) {
    ++report.checked;
    if (!entry.check->pass) report.pass = false;
  } else {
    ++report.skipped;
  }
  report.entries.push_back(std::move(entry));
}

}  // namespace

SubquotientReport verify_on_subquotients(const DirectedGraph& g, std::size_t m,
                                         std::size_t max_vertices) {
  require_k_theory_graph(g);
  SubquotientReport report;
  report.m = m;
  const std::vector<VertexSet> lattice = enumerate_hereditary_saturated(g, max_vertices);
  const std::size_t n = g.vertex_count();

  run_entry(report, {"algebra", VertexSet(n), std::nullopt, "C*(E)", std::nullopt, ""}, g, m);
  for (const VertexSet& h : lattice) {
    const std::string hs = format_vertex_set(g, h);
    run_entry(report, {"ideal", h, std::nullopt, "I_" + hs, std::nullopt, ""},
              restriction_graph(g, h), m);
    run_entry(report, {"quotient", h, std::nullopt, "C*(E)/I_" + hs, std::nullopt, ""},
              quotient_graph(g, h), m);
  }
  for (const VertexSet& h : lattice) {
    if (h.size() == n) continue;
    const DirectedGraph eh = restriction_graph(g, h);
    for (const VertexSet& j : lattice) {
      if (j.empty() || j == h || !j.is_subset_of(h)) continue;
      const std::string name =
          "I_" + format_vertex_set(g, h) + "/I_" + format_vertex_set(g, j);
      run_entry(report, {"subquotient", h, j, name, std::nullopt, ""},
                quotient_graph(eh, translate(g, j, eh)), m);
    }
  }
  return report;
}

}  // namespace graphck
