#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphck/graph.hpp"
#include "graphck/matrix.hpp"

namespace graphck {

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);
// Re-multiplies and checks every stated property.
bool verify_smith(const IntMatrix& m, const SmithDecomposition& s);

// Invariant factors d_k = Delta_k / Delta_{k-1}, Delta_k the gcd of the k x k
// minors, for k up to the rank. Independent of any elimination; limited to
// matrices up to 8 x 8 with entries of absolute value <= 1000.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m);

struct KTheoryResult {
  std::size_t k0_rank = 0;
  std::vector<Integer> k0_torsion;  // invariant factors > 1, in divisibility order
  std::size_t k1_rank = 0;
  IntMatrix phi;  // 1 - A^t
  SmithDecomposition smith;
  // Columns form an integral basis of ker(1 - A^t).
  std::vector<std::vector<Integer>> k1_basis;
};

// K_0 = coker(1 - A^t), K_1 = ker(1 - A^t). Throws PreconditionError for
// graphs with sinks or graphs produced by add_tails.
KTheoryResult graph_k_theory(const DirectedGraph& g);

// sum_{j<m} (A^t)^j.
IntMatrix induced_endomorphism_matrix(const DirectedGraph& g, std::size_t m);

struct MultiplicationCheck {
  std::string target;
  std::size_t m = 0;
  bool pass = false;
  bool k0_pass = false;
  bool k1_pass = false;
  // k0_certificate[v] = y with (1 - A^t) y = (S - m I) delta_v.
  std::vector<std::vector<Integer>> k0_certificate;
  std::vector<std::vector<Integer>> k1_basis;
  std::string failure;
};

// K_0: (S - m I) delta_v lies in the image of 1 - A^t for every v, solved
// through the Smith form. K_1: S x = m x for a basis x of ker(1 - A^t).
MultiplicationCheck verify_multiplication_by_m(const DirectedGraph& g, std::size_t m,
                                               const std::string& target = "C*(E)");
// Rechecks a certificate by direct multiplication, without the Smith form.
bool recheck_certificate(const DirectedGraph& g, const MultiplicationCheck& c);

struct SubquotientEntry {
  std::string kind;  // "algebra", "ideal", "quotient" or "subquotient"
  VertexSet h;       // ideal vertex set (restriction), or the quotiented set
  std::optional<VertexSet> j;  // inner set for subquotients
  std::string target;
  std::optional<MultiplicationCheck> check;
  std::string skipped;  // reason, when check is empty
};

struct SubquotientReport {
  std::size_t m = 0;
  std::vector<SubquotientEntry> entries;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool pass = true;
};

// Runs verify_multiplication_by_m on g, on every ideal E H and quotient E/H
// for hereditary saturated H, and on (E H)/J for nested J in H. Empty or
// sink-bearing graphs are skipped with a reason.
SubquotientReport verify_on_subquotients(const DirectedGraph& g, std::size_t m,
                                         std::size_t max_vertices = kDefaultMaxLatticeVertices);

}  // namespace graphck
