#include "graphck/classifier.hpp"

namespace graphck {

namespace {

const char* const kCiteAF = "a graph without cycles gives an AF algebra: nuclear dimension 0";
const char* const kCitePI =
    "purely infinite graph algebra with finitely many ideals: nuclear dimension 1";
const char* const kCiteExtension =
    "purely infinite gauge-invariant ideal with AF quotient: nuclear dimension at most 2, "
    "and exactly 1 when the ideal has finitely many ideals";
const char* const kCiteToeplitz =
    "Condition (K) and every vertex reaching a cycle: the Toeplitz algebra has nuclear "
    "dimension at most 2";
const char* const kCiteNotAF = "a graph with a cycle does not give an AF algebra: nuclear "
                               "dimension at least 1";

}  // namespace

bool purely_infinite(const DirectedGraph& g) {
  return !g.empty() && satisfies_condition_K(g) && every_vertex_connects_to_cycle(g);
}

std::string format_bound(const std::optional<std::size_t>& b) {
  return b ? std::to_string(*b) : std::string("unknown");
}

Verdict classify(const DirectedGraph& g, std::size_t max_vertices) {
  Verdict v;
  if (is_acyclic(g)) {
    v.lower = 0;
    v.upper = 0;
    v.rules_fired.push_back({"R0", kCiteAF, "no cycles"});
    return v;
  }

  const bool k = satisfies_condition_K(g);
  const bool reach = every_vertex_connects_to_cycle(g);
  if (k && reach) {
    const std::vector<VertexSet> lattice = enumerate_hereditary_saturated(g, max_vertices);
    std::string sets;
    for (const VertexSet& h : lattice) sets += (sets.empty() ? "" : " ") + format_vertex_set(g, h);
    v.lower = 1;
    v.upper = 1;
    v.rules_fired.push_back({"R1", kCitePI,
                             "Condition (K) holds; every vertex reaches a cycle; ideal lattice " +
                                 sets});
  } else {
    for (const VertexSet& h : enumerate_hereditary_saturated(g, max_vertices)) {
      if (h.empty()) continue;
      const DirectedGraph eh = restriction_graph(g, h);
      if (!purely_infinite(eh) || !is_acyclic(quotient_graph(g, h))) continue;
      const bool finite_ideals = satisfies_condition_K(eh);
      v.ideal_witness = h;
      v.upper = finite_ideals ? 1 : 2;
      if (finite_ideals) v.lower = 1;
      v.rules_fired.push_back(
          {"R3", kCiteExtension,
           "H = " + format_vertex_set(g, h) +
               ": restriction purely infinite, quotient acyclic" +
               (finite_ideals ? ", restriction satisfies Condition (K)" : "")});
      break;
    }
  }

  if (k && reach) {
    v.toeplitz_upper = 2;
    v.rules_fired.push_back({"R4", kCiteToeplitz, "Condition (K) holds; every vertex reaches a cycle"});
  }
  if (!v.lower) {
    v.lower = 1;
    v.rules_fired.push_back({"R5", kCiteNotAF, "cycle found"});
  }
  return v;
}

IdealReport ideal_report(const DirectedGraph& g, std::size_t max_vertices) {
  IdealReport r;
  r.condition_K = satisfies_condition_K(g);
  for (const VertexSet& h : enumerate_hereditary_saturated(g, max_vertices)) {
    IdealEntry e;
    e.h = h;
    const DirectedGraph eh = restriction_graph(g, h);
    e.restriction_purely_infinite = purely_infinite(eh);
    e.restriction_condition_K = satisfies_condition_K(eh);
    e.quotient_acyclic = is_acyclic(quotient_graph(g, h));
    e.witness = !h.empty() && e.restriction_purely_infinite && e.quotient_acyclic;
    r.entries.push_back(std::move(e));
  }
  r.simple_lattice = r.entries.size() <= 2;
  r.note = r.condition_K
               ? "Condition (K) holds: every ideal is gauge-invariant, so this is the full ideal "
                 "lattice"
               : "Condition (K) fails: ideals that are not gauge-invariant may exist and are "
                 "not listed";
  return r;
}

}  // namespace graphck
