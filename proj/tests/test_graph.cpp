#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "graphck/dsl.hpp"
#include "graphck/errors.hpp"
#include "graphck/graph.hpp"
#include "support.hpp"

using namespace graphck;
using namespace graphck::testing;

namespace {

// Closed walks at v of length <= max_length meeting v only at the ends, by
// depth-first search over edges.
std::set<std::vector<EdgeId>> brute_first_returns(const DirectedGraph& g, VertexId v,
                                                  std::size_t max_length) {
  std::set<std::vector<EdgeId>> out;
  std::vector<EdgeId> stack;
  std::function<void(VertexId)> go = [&](VertexId at) {
    if (stack.size() == max_length) return;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.source(e) != at) continue;
      VertexId r = g.range(e);
      stack.push_back(e);
      if (r == v) {
        out.insert(stack);
      } else {
        go(r);
      }
      stack.pop_back();
    }
  };
  go(v);
  return out;
}

}  // namespace

TEST_SUITE("graph_core") {
  TEST_CASE("adjacency matrix") {
    CHECK(adjacency_matrix(graph(kTwoLoop)) == IntMatrix(1, 1, {2}));
    CHECK(adjacency_matrix(graph(kSingleEdge)) == IntMatrix(2, 2, {0, 1, 0, 0}));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      DirectedGraph g = random_graph(rng, 6, 12, false);
      IntMatrix a = adjacency_matrix(g);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Integer row = 0, col = 0;
        for (VertexId w = 0; w < g.vertex_count(); ++w) {
          row += a(v, w);
          col += a(w, v);
        }
        CHECK(row == static_cast<long>(g.out_edges(v).size()));
        CHECK(col == static_cast<long>(g.in_edges(v).size()));
      }
    }
  }

  TEST_CASE("paths by length window") {
    DirectedGraph two = graph(kTwoLoop);
    auto p01 = paths(two, 0, 1);
    REQUIRE(p01.size() == 1);
    CHECK(p01[0].is_vertex());
    CHECK(paths(two, 0, 3).size() == 7);
    DirectedGraph se = graph(kSingleEdge);
    auto p13 = paths(se, 1, 3);
    REQUIRE(p13.size() == 1);
    CHECK(se.path_id(p13[0]) == "e");
    CHECK_THROWS_AS(paths(two, 0, 30, 1000), ResourceError);
  }

  TEST_CASE("paths are sorted and composable") {
    DirectedGraph g = graph(kGolden);
    auto ps = paths(g, 0, 6);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(g.is_valid(ps[i]));
      if (i > 0) CHECK(ps[i - 1] < ps[i]);
    }
    CHECK(count_paths_from(g, g.vertex("v"), 6) == static_cast<long>(paths_from(g, g.vertex("v"), 0, 6).size()));
  }

  TEST_CASE("first-return paths") {
    DirectedGraph two = graph(kTwoLoop);
    auto fr = first_return_paths(two, 0);
    REQUIRE(fr.size() == 2);
    CHECK(two.path_id(fr[0]) == "e");
    CHECK(two.path_id(fr[1]) == "f");
    CHECK(first_return_paths(graph(kSingleLoop), 0).size() == 1);
    DirectedGraph c2 = graph(kCycle2);
    auto frc = first_return_paths(c2, c2.vertex("v"));
    REQUIRE(frc.size() == 1);
    CHECK(c2.path_id(frc[0]) == "a.b");
  }

  TEST_CASE("first-return paths agree with brute force") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      DirectedGraph g = random_graph(rng, 5, 9, false);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::set<std::vector<EdgeId>> expect = brute_first_returns(g, v, g.vertex_count());
        std::set<std::vector<EdgeId>> got;
        for (const Path& p : first_return_paths(g, v, g.vertex_count())) {
          CHECK(p.source() == v);
          CHECK(p.range() == v);
          auto vs = p.vertices();
          for (std::size_t i = 1; i + 1 < vs.size(); ++i) CHECK(vs[i] != v);
          got.insert(std::vector<EdgeId>(p.edges().begin(), p.edges().end()));
        }
        CHECK(got == expect);
        const std::size_t counted = count_first_return_paths(g, v, 2);
        CHECK(counted >= std::min<std::size_t>(expect.size(), 2));
        CHECK((counted == 0) == expect.empty());
      }
    }
  }

  TEST_CASE("Condition (K)") {
    CHECK(satisfies_condition_K(graph(kTwoLoop)));
    CHECK_FALSE(satisfies_condition_K(graph(kSingleLoop)));
    CHECK_FALSE(satisfies_condition_K(graph(kCycle2)));
    CHECK(satisfies_condition_K(graph(kGolden)));
    CHECK(satisfies_condition_K(graph(kSingleEdge)));
  }

  TEST_CASE("connects to a cycle") {
    CHECK(every_vertex_connects_to_cycle(graph(kTwoLoop)));
    CHECK_FALSE(every_vertex_connects_to_cycle(graph(kSingleEdge)));
    DirectedGraph m = graph(kMixedM);
    CHECK_FALSE(every_vertex_connects_to_cycle(m));
    CHECK(vertex_not_reaching_cycle(m) == m.vertex("w"));
  }

  TEST_CASE("hereditary saturated closure") {
    DirectedGraph m = graph(kMixedM);
    CHECK(hereditary_saturated_closure(m, set_of(m, {"v"})) == set_of(m, {"v"}));
    CHECK(hereditary_saturated_closure(m, set_of(m, {"u"})) == set_of(m, {"u", "v", "w"}));
    CHECK(hereditary_saturated_closure(m, VertexSet(3)).empty());
  }

  TEST_CASE("closure is idempotent, monotone and closed") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      DirectedGraph g = random_graph(rng, 6, 10, false);
      const std::size_t n = g.vertex_count();
      for (unsigned mask = 0; mask < (1u << n); mask += 3) {
        VertexSet s(n);
        for (VertexId v = 0; v < n; ++v)
          if (mask & (1u << v)) s.insert(v);
        VertexSet c = hereditary_saturated_closure(g, s);
        CHECK(s.is_subset_of(c));
        CHECK(hereditary_saturated_closure(g, c) == c);
        CHECK(brute_hereditary(g, c));
        CHECK(brute_saturated(g, c));
        VertexSet bigger = s;
        bigger.insert(static_cast<VertexId>(mask % n));
        CHECK(c.is_subset_of(hereditary_saturated_closure(g, bigger)));
      }
    }
  }

  TEST_CASE("lattice enumeration") {
    DirectedGraph m = graph(kMixedM);
    auto lat = enumerate_hereditary_saturated(m);
    REQUIRE(lat.size() == 4);
    CHECK(lat[0].empty());
    CHECK(lat[1] == set_of(m, {"v"}));
    CHECK(lat[2] == set_of(m, {"w"}));
    CHECK(lat[3] == set_of(m, {"u", "v", "w"}));
    CHECK(enumerate_hereditary_saturated(graph(kTwoLoop)).size() == 2);
    DirectedGraph c2 = graph(kCycle2);
    auto lc = enumerate_hereditary_saturated(c2);
    REQUIRE(lc.size() == 2);
    CHECK(lc[1].size() == 2);
    DirectedGraph big;
    for (int i = 0; i < 5; ++i) big.add_vertex("x" + std::to_string(i));
    CHECK_THROWS_AS(enumerate_hereditary_saturated(big, 4), ResourceError);
  }

  TEST_CASE("quotient and restriction") {
    DirectedGraph m = graph(kMixedM);
    DirectedGraph q = quotient_graph(m, set_of(m, {"v"}));
    CHECK(q.vertex_count() == 2);
    REQUIRE(q.edge_count() == 1);
    CHECK(q.vertex_id(q.source(0)) == "u");
    CHECK(q.vertex_id(q.range(0)) == "w");
    CHECK(quotient_graph(m, VertexSet(3)) == m);
    CHECK(quotient_graph(m, VertexSet::all(3)).empty());
    CHECK_THROWS_AS(quotient_graph(m, set_of(m, {"v", "w"})), ContractViolation);

    DirectedGraph r = restriction_graph(m, set_of(m, {"v"}));
    CHECK(r.vertex_count() == 1);
    CHECK(r.edge_count() == 2);
    DirectedGraph rw = restriction_graph(m, set_of(m, {"w"}));
    CHECK(rw.vertex_count() == 1);
    CHECK(rw.edge_count() == 0);
    CHECK(restriction_graph(m, VertexSet::all(3)) == m);
    CHECK_THROWS_AS(restriction_graph(m, set_of(m, {"u"})), ContractViolation);
  }

  TEST_CASE("edge partition across an ideal") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      DirectedGraph g = random_graph(rng, 6, 12, false);
      for (const VertexSet& h : enumerate_hereditary_saturated(g)) {
        std::size_t crossing = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e)
          if (!h.contains(g.source(e)) && h.contains(g.range(e))) ++crossing;
        CHECK(restriction_graph(g, h).edge_count() + quotient_graph(g, h).edge_count() +
                  crossing ==
              g.edge_count());
      }
    }
  }

  TEST_CASE("acyclicity and sinks") {
    DirectedGraph se = graph(kSingleEdge);
    CHECK(is_acyclic(se));
    CHECK(sinks(se) == std::vector<VertexId>{se.vertex("w")});
    CHECK_FALSE(is_acyclic(graph(kTwoLoop)));
    CHECK(sinks(graph(kTwoLoop)).empty());
    DirectedGraph m = graph(kMixedM);
    CHECK_FALSE(is_acyclic(m));
    CHECK(sinks(m) == std::vector<VertexId>{m.vertex("w")});
  }

  TEST_CASE("path parsing") {
    DirectedGraph g = graph(kGolden);
    Path p = g.parse_path("a.b.e");
    CHECK(p.length() == 3);
    CHECK(g.path_id(p) == "a.b.e");
    CHECK(g.parse_path("w").is_vertex());
    CHECK_THROWS_AS(g.parse_path("a.a"), ContractViolation);
    CHECK_THROWS_AS(g.parse_path("zz"), ContractViolation);
  }
}

TEST_SUITE("dsl") {
  TEST_CASE("two-loop graph") {
    DirectedGraph g = parse_graph("vertex v\nedge e : v -> v\nedge f : v -> v");
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 2);
    CHECK(g.edge(1).id == "f");
  }

  TEST_CASE("unknown vertex") {
    try {
      parse_graph("edge e : v -> w");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("unknown vertex v at line 1") != std::string::npos);
      CHECK(e.line() == 1);
    }
  }

  TEST_CASE("empty input and comments") {
    CHECK(parse_graph("").empty());
    CHECK(parse_graph("# nothing\n\n   \n").empty());
    DirectedGraph g = parse_graph("vertex v # hub\nedge e : v -> v # loop\n");
    CHECK(g.edge_count() == 1);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_graph("vertex v\nvertex v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex v\nedge e : v -> v\nedge e : v -> v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex v\nedge e v -> v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex v\nedge e : v => v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("node v\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex v w\n"), ParseError);
    try {
      parse_graph("vertex v\nedge e : v -> $\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 1);
    }
  }

  TEST_CASE("round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      DirectedGraph g = random_graph(rng, 6, 12, false);
      DirectedGraph back = parse_graph(emit_graph(g));
      CHECK(back == g);
      CHECK(emit_graph(back) == emit_graph(g));
    }
    for (auto& [name, g] : desk_corpus()) CHECK(parse_graph(emit_graph(g)) == g);
  }
}

TEST_SUITE("graph_core") {
  TEST_CASE("lattice equals brute-force subset filtering") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
      DirectedGraph g = random_graph(rng, 8, 16, false);
      const std::size_t n = g.vertex_count();
      std::vector<VertexSet> expect;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        VertexSet s(n);
        for (VertexId v = 0; v < n; ++v)
          if (mask & (1u << v)) s.insert(v);
        if (brute_hereditary(g, s) && brute_saturated(g, s)) expect.push_back(s);
      }
      std::vector<VertexSet> got = enumerate_hereditary_saturated(g);
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expect);
      for (const VertexSet& h : got) {
        CHECK(is_hereditary(g, h));
        CHECK(is_saturated(g, h));
      }
    }
  }
}
