#include <doctest.h>

#include <random>
#include <set>

#include "graphck/constructions.hpp"
#include "graphck/errors.hpp"
#include "support.hpp"

using namespace graphck;
using namespace graphck::testing;

namespace {

std::set<std::string> edge_ids(const DirectedGraph& g) {
  std::set<std::string> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.insert(g.edge(e).id);
  return out;
}

std::string edge_line(const DirectedGraph& g, EdgeId e) {
  return g.edge(e).id + ":" + g.vertex_id(g.source(e)) + "->" + g.vertex_id(g.range(e));
}

std::set<std::string> edge_lines(const DirectedGraph& g) {
  std::set<std::string> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.insert(edge_line(g, e));
  return out;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("truncation") {
    DirectedGraph g = graph(kTwoLoop);
    Path mu = g.parse_path("e.f.e.e.f");
    TruncationWitness t = truncate_path(mu, 2);
    CHECK(t.head.length() == 1);
    CHECK(g.path_id(t.head) == "e");
    CHECK(t.tail_length == 4);
    CHECK(truncate_path(g.parse_path("e.f.e.f"), 2).head.is_vertex());
    CHECK(truncate_path(g.parse_path("f"), 3).head == g.parse_path("f"));
    for (const Path& p : paths(g, 0, 8))
      for (std::size_t m = 1; m <= 4; ++m) {
        TruncationWitness w = truncate_path(p, m);
        CHECK(w.head.length() < m);
        CHECK(w.tail_length % m == 0);
        CHECK(w.head.is_prefix_of(p));
        CHECK(w.head.length() + w.tail_length == p.length());
      }
  }

  TEST_CASE("blow-up of the two-loop graph") {
    BlowupGraph b2 = blowup_graph(graph(kTwoLoop), 2);
    CHECK(b2.graph.vertex_count() == 3);
    CHECK(edge_lines(b2.graph) == std::set<std::string>{"(e,v):e->v", "(f,v):f->v",
                                                        "(e,e):v->e", "(e,f):v->f",
                                                        "(f,e):v->e", "(f,f):v->f"});
    BlowupGraph b1 = blowup_graph(graph(kTwoLoop), 1);
    CHECK(b1.graph.vertex_count() == 1);
    CHECK(b1.graph.edge_count() == 2);
  }

  TEST_CASE("blow-up of a single edge") {
    BlowupGraph b = blowup_graph(graph(kSingleEdge), 2);
    CHECK(b.graph.vertex_count() == 3);
    CHECK(edge_lines(b.graph) == std::set<std::string>{"(e,w):e->w"});
  }

  TEST_CASE("blow-up source and range rules") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
      DirectedGraph g = random_graph(rng, 5, 8, false);
      for (std::size_t m = 1; m <= 4; ++m) {
        BlowupGraph b = blowup_graph(g, m);
        CHECK(b.graph.vertex_count() == paths(g, 0, m).size());
        std::size_t expected_edges = 0;
        for (const Path& mu : paths(g, 0, m)) expected_edges += g.in_edges(mu.source()).size();
        CHECK(b.graph.edge_count() == expected_edges);
        for (EdgeId y = 0; y < b.graph.edge_count(); ++y) {
          EdgeId e = b.edge_base[y];
          const Path& mu = b.vertex_paths[b.edge_target[y]];
          CHECK(g.range(e) == mu.source());
          CHECK(b.graph.range(y) == b.edge_target[y]);
          const Path& src = b.vertex_paths[b.graph.source(y)];
          if (mu.length() + 1 < m) {
            CHECK(src == g.edge_path(e).concat(mu));
          } else {
            CHECK(src == Path::at_vertex(g.source(e)));
          }
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          CHECK(b.vertex_paths[b.hub(v)] == Path::at_vertex(v));
      }
    }
  }

  TEST_CASE("E(1) is the base graph") {
    for (auto& [name, g] : desk_corpus()) {
      BlowupGraph b = blowup_graph(g, 1);
      REQUIRE(b.graph.vertex_count() == g.vertex_count());
      REQUIRE(b.graph.edge_count() == g.edge_count());
      for (EdgeId y = 0; y < b.graph.edge_count(); ++y) {
        EdgeId e = b.edge_base[y];
        CHECK(b.graph.source(y) == g.source(e));
        CHECK(b.graph.range(y) == g.range(e));
      }
    }
  }

  TEST_CASE("path embedding examples") {
    DirectedGraph g = graph(kTwoLoop);
    BlowupGraph b = blowup_graph(g, 2);
    CHECK(b.graph.path_id(embed_path(b, g.parse_path("e.f"))) == "(e,f).(f,v)");
    CHECK(b.graph.path_id(embed_path(b, g.parse_path("e.f.e.f"))) ==
          "(e,f).(f,v).(e,f).(f,v)");
    for (std::size_t m = 1; m <= 4; ++m) {
      BlowupGraph bm = blowup_graph(g, m);
      CHECK(embed_path(bm, Path::at_vertex(0)) == Path::at_vertex(bm.hub(0)));
    }
  }

  TEST_CASE("embedding is composable, endpoint-correct and injective") {
    std::vector<DirectedGraph> graphs;
    for (auto& [name, g] : desk_corpus()) graphs.push_back(g);
    for (const DirectedGraph& g : graphs) {
      for (std::size_t m = 1; m <= 3; ++m) {
        BlowupGraph b = blowup_graph(g, m);
        std::set<std::pair<std::size_t, std::vector<EdgeId>>> seen;
        for (const Path& mu : paths(g, 0, 3 * m + 1)) {
          Path im = embed_path(b, mu);
          CHECK(b.graph.is_valid(im));
          CHECK(b.vertex_paths[im.source()] == truncate_path(mu, m).head);
          CHECK(b.vertex_paths[im.range()] == Path::at_vertex(mu.range()));
          CHECK(im.length() == mu.length());
          auto key = std::make_pair(mu.length(),
                                    std::vector<EdgeId>(im.edges().begin(), im.edges().end()));
          if (!mu.is_vertex()) CHECK(seen.insert(key).second);
        }
      }
    }
  }

  TEST_CASE("embedding factorizes over full blocks") {
    DirectedGraph g = graph(kGolden);
    for (std::size_t m = 1; m <= 3; ++m) {
      BlowupGraph b = blowup_graph(g, m);
      for (const Path& mu : paths(g, m, m + 1))
        for (const Path& nu : paths_from(g, mu.range(), 0, 2 * m + 1)) {
          if (nu.is_vertex()) continue;
          Path lhs = embed_path(b, mu.concat(nu));
          Path tail = embed_path(b, nu);
          if (truncate_path(nu, m).head.is_vertex()) {
            CHECK(lhs == embed_path(b, mu).concat(tail));
          }
        }
    }
  }

  TEST_CASE("Jeong-Park subgraph examples") {
    DirectedGraph g = graph(kTwoLoop);
    std::vector<VertexId> v{g.vertex("v")};
    DirectedGraph full = jeong_park_subgraph(g, v, {});
    CHECK(full == g);
    CHECK(jeong_park_subgraph(g, {}, {}).empty());

    DirectedGraph h = graph("vertex u\nvertex v\nedge a : u -> v\nedge e1 : v -> v\nedge e2 : v -> v\n");
    std::vector<VertexId> vu{h.vertex("u")};
    DirectedGraph s = jeong_park_subgraph(h, vu, {});
    CHECK(s.vertex_count() == 2);
    CHECK(edge_ids(s) == std::set<std::string>{"a", "e1", "e2"});

    DirectedGraph bad = graph(kCycle2);
    std::vector<VertexId> vb{0};
    CHECK_THROWS_AS(jeong_park_subgraph(bad, vb, {}), ContractViolation);
  }

  TEST_CASE("Jeong-Park subgraph properties") {
    std::mt19937_64 rng(43);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 60; ++trial) {
      DirectedGraph g = random_graph(rng, 6, 12, true);
      if (!satisfies_condition_K(g) || !every_vertex_connects_to_cycle(g)) continue;
      ++tested;
      std::uniform_int_distribution<int> coin(0, 2);
      std::vector<VertexId> vs;
      std::vector<EdgeId> es;
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (coin(rng) == 0) vs.push_back(v);
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (coin(rng) == 0) es.push_back(e);
      DirectedGraph s = jeong_park_subgraph(g, vs, es);
      if (vs.empty() && es.empty()) {
        CHECK(s.empty());
        continue;
      }
      CHECK(satisfies_condition_K(s));
      CHECK(every_vertex_connects_to_cycle(s));
      for (VertexId v : vs) CHECK(s.find_vertex(g.vertex_id(v)).has_value());
      for (EdgeId e : es) CHECK(s.find_edge(g.edge(e).id).has_value());
      for (EdgeId f = 0; f < s.edge_count(); ++f) {
        auto e = g.find_edge(s.edge(f).id);
        REQUIRE(e.has_value());
        CHECK(g.vertex_id(g.source(*e)) == s.vertex_id(s.source(f)));
        CHECK(g.vertex_id(g.range(*e)) == s.vertex_id(s.range(f)));
      }
    }
    CHECK(tested >= 20);
  }

  TEST_CASE("sink tails") {
    DirectedGraph se = add_tails(graph(kSingleEdge), 2);
    CHECK(se.vertex_count() == 4);
    CHECK(se.edge_count() == 3);
    CHECK(se.truncated_tails());
    CHECK(sinks(se).size() == 1);
    CHECK(!se.is_sink(se.vertex("w")));

    DirectedGraph two = graph(kTwoLoop);
    DirectedGraph same = add_tails(two, 3);
    CHECK(same == two);

    DirectedGraph m = add_tails(graph(kMixedM), 1);
    CHECK(m.vertex_count() == 4);
    CHECK(m.edge_count() == 5);
    CHECK(m.out_edges(m.vertex("w")).size() == 1);
  }
}
