#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "graphck/constructions.hpp"
#include "graphck/dsl.hpp"
#include "graphck/formal_sum.hpp"
#include "graphck/graph.hpp"
#include "graphck/homomorphisms.hpp"
#include "graphck/pathspace.hpp"

namespace graphck::testing {

inline const char* const kSingleLoop = "vertex v\nedge e : v -> v\n";
inline const char* const kTwoLoop = "vertex v\nedge e : v -> v\nedge f : v -> v\n";
inline const char* const kThreeLoop =
    "vertex v\nedge e : v -> v\nedge f : v -> v\nedge g : v -> v\n";
inline const char* const kCycle2 = "vertex v\nvertex w\nedge a : v -> w\nedge b : w -> v\n";
inline const char* const kGolden =
    "vertex v\nvertex w\nedge e : v -> v\nedge a : v -> w\nedge b : w -> v\n";
inline const char* const kMixedM =
    "vertex v\nvertex u\nvertex w\n"
    "edge e1 : v -> v\nedge e2 : v -> v\nedge a : u -> v\nedge b : u -> w\n";
inline const char* const kTwoVertex =
    "vertex v\nvertex w\n"
    "edge e1 : v -> v\nedge e2 : v -> v\nedge f1 : w -> w\nedge f2 : w -> w\nedge g : v -> w\n";
inline const char* const kSingleEdge = "vertex v\nvertex w\nedge e : v -> w\n";

inline DirectedGraph graph(const char* text) { return parse_graph(text); }

// The six-graph desk corpus.
inline std::vector<std::pair<std::string, DirectedGraph>> desk_corpus() {
  return {{"single_loop", graph(kSingleLoop)}, {"two_loop", graph(kTwoLoop)},
          {"cycle2", graph(kCycle2)},          {"golden", graph(kGolden)},
          {"mixed_M", graph(kMixedM)},         {"twovertex", graph(kTwoVertex)}};
}

inline std::vector<std::pair<std::string, DirectedGraph>> sink_free_corpus() {
  std::vector<std::pair<std::string, DirectedGraph>> out;
  for (auto& [name, g] : desk_corpus())
    if (!has_sinks(g)) out.emplace_back(name, g);
  return out;
}

// Random multigraph with vertices 1..max_vertices and at most max_edges
// edges. With sink_free every vertex gets an outgoing edge first.
inline DirectedGraph random_graph(std::mt19937_64& rng, std::size_t max_vertices,
                                  std::size_t max_edges, bool sink_free) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
  const std::size_t n = nv(rng);
  const std::size_t lo = sink_free ? n : 0;
  std::uniform_int_distribution<std::size_t> ne(lo, std::max(lo, max_edges));
  const std::size_t m = ne(rng);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  DirectedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (std::size_t k = 0; k < m; ++k) {
    VertexId s = sink_free && k < n ? static_cast<VertexId>(k) : pick(rng);
    g.add_edge("e" + std::to_string(k), s, pick(rng));
  }
  return g;
}

inline VertexSet set_of(const DirectedGraph& g, std::initializer_list<const char*> ids) {
  VertexSet s(g.vertex_count());
  for (const char* id : ids) s.insert(g.vertex(id));
  return s;
}

// Hereditary and saturated, straight from the definitions.
inline bool brute_hereditary(const DirectedGraph& g, const VertexSet& h) {
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (h.contains(g.source(e)) && !h.contains(g.range(e))) return false;
  return true;
}

inline bool brute_saturated(const DirectedGraph& g, const VertexSet& h) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v)) continue;
    bool has_out = false, all_in = true;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.source(e) != v) continue;
      has_out = true;
      all_in = all_in && h.contains(g.range(e));
    }
    if (has_out && all_in) return false;
  }
  return true;
}

// Generator words q_v, t_e and t_e^*.
inline std::vector<Word> generator_words(const DirectedGraph& g) {
  std::vector<Word> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(Word::vertex(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.push_back(Word::edge(g, e));
    out.push_back(Word::edge_adjoint(g, e));
  }
  return out;
}

// Random product of k generators (q_v, t_e, t_e^*).
inline FormalSum random_product(std::mt19937_64& rng, const DirectedGraph& g, std::size_t k) {
  std::vector<Word> gens = generator_words(g);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  FormalSum out(gens[pick(rng)]);
  for (std::size_t i = 1; i < k; ++i) out = out * FormalSum(gens[pick(rng)]);
  return out;
}

// All words s_a s_b^* with |a|, |b| < len.
inline std::vector<Word> short_words(const DirectedGraph& g, std::size_t len) {
  std::vector<Word> out;
  std::vector<Path> ps = paths(g, 0, len);
  for (const Path& a : ps)
    for (const Path& b : ps)
      if (a.range() == b.range()) out.push_back(Word::of(a, b));
  return out;
}

inline std::size_t exact_columns(const TruncatedRep& rep, const RepOperator& a) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < rep.dim(); ++j)
    if (rep.exact_column(a, j)) ++n;
  return n;
}

// Equality on the exact columns of both, with at least one such column.
inline bool agree_nonvacuous(const TruncatedRep& rep, const RepOperator& a, const RepOperator& b) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < rep.dim(); ++j)
    if (rep.exact_column(a, j) && rep.exact_column(b, j)) ++n;
  return n > 0 && rep.agree(a, b);
}

// Delta, matrix-unit, Phi_m and compression-display identities on the exact
// region of build_rep(g, cutoff) for m = 1..max_m.
inline bool compacts_suite(const DirectedGraph& g, std::size_t cutoff, std::size_t max_m,
                           std::string& failure) {
  TruncatedRep rep = build_rep(g, cutoff);
  const std::size_t p = std::min<std::size_t>(3, cutoff / 2);
  if (!check_matrix_units(rep, p)) return failure = "matrix units", false;
  if (!check_delta_identities(rep, p)) return failure = "delta identities", false;
  for (std::size_t m = 1; m <= max_m && m <= cutoff; ++m) {
    RepOperator phi = phi_projection(rep, m);
    if (exact_columns(rep, phi) == 0 || !rep.is_projection(phi))
      return failure = "Phi_" + std::to_string(m) + " projection", false;
    for (const Word& w : short_words(g, 2))
      if (!check_compression_display(rep, m, w))
        return failure = "compression display m=" + std::to_string(m) + " " + format_word(g, w),
               false;
  }
  return true;
}

// T_{i_m(mu)} = iota_m(t_mu) Q_{r(mu)} = Q_{[mu]_m} iota_m(t_mu) for |mu| <= 2m,
// symbolically in the Toeplitz algebra of E(m) and in its truncated path
// space representation.
inline bool embedding_identities(const DirectedGraph& g, std::size_t m, std::size_t cutoff,
                                 std::string& failure) {
  BlowupGraph b = blowup_graph(g, m);
  TruncatedRep rep = build_rep(b.graph, cutoff);
  for (const Path& mu : paths(g, 0, 2 * m + 1)) {
    Path im = embed_path(b, mu);
    const VertexId r = b.hub(mu.range());
    const VertexId s = b.vertex_of(truncate_path(mu, m).head);
    FormalSum direct(Word::of(im, Path::at_vertex(im.range())));
    FormalSum iota = iota_word(b, Word::of(mu, Path::at_vertex(mu.range())));
    FormalSum right = iota * vertex_projection(r);
    FormalSum left = vertex_projection(s) * iota;
    if (!equal_in(b.graph, direct, right, AlgebraMode::Toeplitz) ||
        !equal_in(b.graph, direct, left, AlgebraMode::Toeplitz))
      return failure = "symbolic " + g.path_id(mu), false;
    RepOperator t = rep.T_path(im);
    RepOperator ti = rep.sum(iota);
    if (!agree_nonvacuous(rep, t, ti * rep.Q(r)) || !agree_nonvacuous(rep, t, rep.Q(s) * ti))
      return failure = "representation " + g.path_id(mu), false;
  }
  return true;
}

// Invariant factors by plain elimination: extended-gcd row operations bring
// the matrix to echelon form, the same on columns makes it diagonal, and
// diag(a, b) ~ diag(gcd, lcm) sorts the divisibility chain. Nonzero factors
// only, ascending.
inline std::vector<Integer> invariant_factors_by_elimination(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  auto row_gcd_step = [&](std::size_t r1, std::size_t r2, std::size_t c) {
    // Replace rows r1, r2 by a unimodular combination with a(r2, c) = 0.
    Integer x = a(r1, c), y = a(r2, c), g, s, t;
    if (x != 0 && y % x == 0) {
      Integer q = y / x;
      for (std::size_t j = 0; j < cols; ++j) a(r2, j) -= q * a(r1, j);
      return;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    Integer xg = x / g, yg = y / g;
    for (std::size_t j = 0; j < cols; ++j) {
      Integer u = a(r1, j), v = a(r2, j);
      a(r1, j) = s * u + t * v;
      a(r2, j) = -yg * u + xg * v;
    }
  };
  auto col_gcd_step = [&](std::size_t c1, std::size_t c2, std::size_t r) {
    Integer x = a(r, c1), y = a(r, c2), g, s, t;
    if (x != 0 && y % x == 0) {
      Integer q = y / x;
      for (std::size_t i = 0; i < rows; ++i) a(i, c2) -= q * a(i, c1);
      return;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    Integer xg = x / g, yg = y / g;
    for (std::size_t i = 0; i < rows; ++i) {
      Integer u = a(i, c1), v = a(i, c2);
      a(i, c1) = s * u + t * v;
      a(i, c2) = -yg * u + xg * v;
    }
  };
  std::size_t t = 0;
  while (t < std::min(rows, cols)) {
    std::optional<std::pair<std::size_t, std::size_t>> nz;
    for (std::size_t j = t; j < cols && !nz; ++j)
      for (std::size_t i = t; i < rows; ++i)
        if (a(i, j) != 0) {
          nz = {i, j};
          break;
        }
    if (!nz) break;
    auto [pi, pj] = *nz;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a(i, t) != 0) row_gcd_step(t, i, t);
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a(t, j) != 0) col_gcd_step(t, j, t);
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a(i, t) != 0) clean = false;
    }
    ++t;
  }
  std::vector<Integer> d;
  for (std::size_t i = 0; i < t; ++i) d.push_back(abs(a(i, i)));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

// Curated graphs with hand-derived nuclear dimension bounds; nullopt is
// "unknown".
struct ClassifierCase {
  std::string name;
  std::string text;
  std::optional<std::size_t> lower;
  std::optional<std::size_t> upper;
  std::string rule;  // the rule that decides the upper bound, or R5
};

inline std::vector<ClassifierCase> classifier_corpus() {
  const std::optional<std::size_t> unknown;
  return {
      {"single_loop", kSingleLoop, 1, unknown, "R5"},
      {"two_loop", kTwoLoop, 1, 1, "R1"},
      {"three_loop", kThreeLoop, 1, 1, "R1"},
      {"four_loop", "vertex v\nedge a : v -> v\nedge b : v -> v\nedge c : v -> v\nedge d : v -> v\n",
       1, 1, "R1"},
      {"cycle2", kCycle2, 1, unknown, "R5"},
      {"golden", kGolden, 1, 1, "R1"},
      {"mixed_M", kMixedM, 1, 1, "R3"},
      {"twovertex", kTwoVertex, 1, 1, "R1"},
      {"single_edge", kSingleEdge, 0, 0, "R0"},
      {"chain", "vertex a\nvertex b\nvertex c\nedge x : a -> b\nedge y : b -> c\nedge z : a -> c\n",
       0, 0, "R0"},
      {"point", "vertex p\n", 0, 0, "R0"},
      {"loop_to_sink", "vertex v\nvertex w\nedge e : v -> v\nedge a : v -> w\n", 1, unknown, "R5"},
      {"two_loop_to_sink",
       "vertex v\nvertex w\nedge e : v -> v\nedge f : v -> v\nedge a : v -> w\n", 1, unknown, "R5"},
      {"source_into_two_loop",
       "vertex u\nvertex v\nedge a : u -> v\nedge e1 : v -> v\nedge e2 : v -> v\n", 1, 1, "R1"},
      {"two_circles", "vertex v\nvertex w\nedge e : v -> v\nedge f : w -> w\n", 1, unknown, "R5"},
      {"mixed_long_tail",
       "vertex v\nvertex u\nvertex w\nvertex x\nedge e1 : v -> v\nedge e2 : v -> v\n"
       "edge a : u -> v\nedge b : u -> w\nedge c : w -> x\n",
       1, 1, "R3"},
  };
}

}  // namespace graphck::testing
