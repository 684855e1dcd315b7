#include <doctest.h>

#include "graphck/dsl.hpp"
#include "graphck/report.hpp"
#include "support.hpp"

using namespace graphck;
using namespace graphck::testing;

TEST_SUITE("report") {
  TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  }

  TEST_CASE("input digest ignores formatting") {
    DirectedGraph a = graph(kTwoLoop);
    DirectedGraph b = graph("# comment\nvertex   v\n\nedge e : v->v\nedge f:v -> v\n");
    CHECK(input_digest(a) == input_digest(b));
    CHECK(input_digest(a) == sha256_hex(emit_graph(a)));
    CHECK(input_digest(a) != input_digest(graph(kThreeLoop)));
    CHECK(input_digest(a).size() == 64);
  }

  TEST_CASE("report envelope") {
    Json r = make_report("classify", "abc", Json{{"x", 1}}, {"c1", "c2"});
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "command", "input_digest", "result", "citations"});
    CHECK(r["schema"] == "graphck/1");
    CHECK(r["citations"].size() == 2);
  }

  TEST_CASE("numbers") {
    CHECK(to_json(Integer(-7)) == -7);
    CHECK(to_json(Integer("123456789012345678901234567890")) == "123456789012345678901234567890");
    CHECK(to_json(Rational(3, 1)) == 3);
    Rational half(2, 4);
    half.canonicalize();
    CHECK(to_json(half) == "1/2");
    CHECK(to_json(std::vector<Integer>{1, 2}) == Json::array({1, 2}));
  }

  TEST_CASE("result payloads") {
    DirectedGraph m = graph(kMixedM);
    Json v = to_json(m, classify(m));
    CHECK(v["lower"] == 1);
    CHECK(v["upper"] == 1);
    CHECK(v["ideal_witness"] == Json::array({"v"}));
    CHECK(v["rules"][0]["rule"] == "R3");
    Json s = to_json(graph(kSingleLoop), classify(graph(kSingleLoop)));
    CHECK(s["upper"] == "unknown");

    Json k = to_json(graph_k_theory(graph(kThreeLoop)));
    CHECK(k["k0"]["rank"] == 0);
    CHECK(k["k0"]["torsion"] == Json::array({2}));
    CHECK(k["k1"]["rank"] == 0);

    Json kap = to_json(kappa_matrix(2));
    CHECK(kap["entries"][0][0] == "1/2");

    Json ideals = to_json(m, ideal_report(m));
    CHECK(ideals.dump() == to_json(m, ideal_report(m)).dump());
    CHECK(citations_of(classify(m)).size() == 1);
  }
}
