#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphck/graph.hpp"

namespace graphck {

// Condition (K) and every vertex connects to a cycle.
bool purely_infinite(const DirectedGraph& g);

struct RuleFiring {
  std::string rule;      // "R0" .. "R5"
  std::string citation;
  std::string witness;   // human-readable data to re-check the hypotheses
};

// Bounds for the nuclear dimension of C*(E). nullopt is "unknown".
struct Verdict {
  std::optional<std::size_t> lower;
  std::optional<std::size_t> upper;
  std::optional<std::size_t> toeplitz_upper;
  std::vector<RuleFiring> rules_fired;
  // The hereditary saturated set used by R3, if any.
  std::optional<VertexSet> ideal_witness;
};

std::string format_bound(const std::optional<std::size_t>& b);

// Rule cascade:
//   R0 acyclic                                              -> [0, 0]
//   R1 purely infinite (Condition (K) gives finitely many ideals) -> [1, 1]
//   R3 some hereditary saturated H with E H purely infinite and E/H acyclic
//      -> upper 2, and [1, 1] when E H satisfies Condition (K)
//   R4 Condition (K) and every vertex connects to a cycle -> Toeplitz upper 2
//   R5 a cycle exists (not AF)                              -> lower 1
// R2 (purely infinite with infinitely many ideals) cannot happen for finite
// graphs and never fires.
Verdict classify(const DirectedGraph& g, std::size_t max_vertices = kDefaultMaxLatticeVertices);

struct IdealEntry {
  VertexSet h;
  bool restriction_purely_infinite = false;
  bool restriction_condition_K = false;
  bool quotient_acyclic = false;
  // Satisfies the hypotheses of the R3 rule.
  bool witness = false;
};

struct IdealReport {
  std::vector<IdealEntry> entries;
  bool condition_K = false;
  bool simple_lattice = false;  // only {} and E^0
  std::string note;
};

IdealReport ideal_report(const DirectedGraph& g,
                         std::size_t max_vertices = kDefaultMaxLatticeVertices);

}  // namespace graphck
