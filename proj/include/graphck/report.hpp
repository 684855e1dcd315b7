#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "graphck/approximation.hpp"
#include "graphck/classifier.hpp"
#include "graphck/graph.hpp"
#include "graphck/kappa.hpp"
#include "graphck/ktheory.hpp"

namespace graphck {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "graphck/1";

std::string sha256_hex(std::string_view data);
// SHA-256 of the canonical DSL text of g.
std::string input_digest(const DirectedGraph& g);

// {"schema", "command", "input_digest", "result", "citations"}. The digest is
// empty when the command has no graph input.
Json make_report(const std::string& command, const std::string& digest, Json result,
                 const std::vector<std::string>& citations);

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const std::vector<Integer>& v);
Json to_json(const DirectedGraph& g, const VertexSet& s);
Json to_json(const KTheoryResult& k);
Json to_json(const MultiplicationCheck& c);
Json to_json(const DirectedGraph& g, const SubquotientReport& r);
Json to_json(const DirectedGraph& g, const Verdict& v);
Json to_json(const DirectedGraph& g, const IdealReport& r);
Json to_json(const KappaMatrix& k);
Json to_json(const KCoefficients& k);
Json to_json(const DirectedGraph& g, const Prop26Result& r);

// Citation strings for every rule in a verdict.
std::vector<std::string> citations_of(const Verdict& v);

}  // namespace graphck
