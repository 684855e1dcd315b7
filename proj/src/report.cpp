#include "graphck/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "graphck/dsl.hpp"
#include "graphck/errors.hpp"

namespace graphck {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

std::string input_digest(const DirectedGraph& g) { return sha256_hex(emit_graph(g)); }

Json make_report(const std::string& command, const std::string& digest, Json result,
                 const std::vector<std::string>& citations) {
  Json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["input_digest"] = digest;
  r["result"] = std::move(result);
  r["citations"] = citations;
  return r;
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json to_json(const Rational& x) {
  if (x.get_den() == 1) return to_json(Integer(x.get_num()));
  return x.get_str();
}

Json to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const DirectedGraph& g, const VertexSet& s) {
  Json out = Json::array();
  for (VertexId v : s.members()) out.push_back(g.vertex_id(v));
  return out;
}

Json to_json(const KTheoryResult& k) {
  Json out;
  out["k0"] = {{"rank", k.k0_rank}, {"torsion", to_json(k.k0_torsion)}};
  out["k1"] = {{"rank", k.k1_rank}};
  return out;
}

Json to_json(const MultiplicationCheck& c) {
  Json cert;
  Json k0 = Json::array();
  for (const auto& y : c.k0_certificate) k0.push_back(to_json(y));
  Json k1 = Json::array();
  for (const auto& x : c.k1_basis) k1.push_back(to_json(x));
  cert["k0_solutions"] = std::move(k0);
  cert["k1_kernel_basis"] = std::move(k1);
  Json out;
  out["target"] = c.target;
  out["m"] = c.m;
  out["pass"] = c.pass;
  out["k0_pass"] = c.k0_pass;
  out["k1_pass"] = c.k1_pass;
  out["certificate"] = std::move(cert);
  if (!c.failure.empty()) out["failure"] = c.failure;
  return out;
}

Json to_json(const DirectedGraph& g, const SubquotientReport& r) {
  Json entries = Json::array();
  for (const SubquotientEntry& e : r.entries) {
    Json j;
    j["kind"] = e.kind;
    j["target"] = e.target;
    j["h"] = to_json(g, e.h);
    if (e.j) j["j"] = to_json(g, *e.j);
    if (e.check) {
      j["pass"] = e.check->pass;
    } else {
      j["skipped"] = e.skipped;
    }
    entries.push_back(std::move(j));
  }
  Json out;
  out["m"] = r.m;
  out["pass"] = r.pass;
  out["checked"] = r.checked;
  out["skipped"] = r.skipped;
  out["entries"] = std::move(entries);
  return out;
}

namespace {

Json bound_json(const std::optional<std::size_t>& b) {
  if (b) return *b;
  return "unknown";
}

}  // namespace

Json to_json(const DirectedGraph& g, const Verdict& v) {
  Json rules = Json::array();
  for (const RuleFiring& r : v.rules_fired)
    rules.push_back({{"rule", r.rule}, {"citation", r.citation}, {"witness", r.witness}});
  Json out;
  out["lower"] = bound_json(v.lower);
  out["upper"] = bound_json(v.upper);
  out["toeplitz_upper"] = v.toeplitz_upper ? Json(*v.toeplitz_upper) : Json(nullptr);
  out["rules"] = std::move(rules);
  out["ideal_witness"] = v.ideal_witness ? to_json(g, *v.ideal_witness) : Json(nullptr);
  return out;
}

Json to_json(const DirectedGraph& g, const IdealReport& r) {
  Json sets = Json::array();
  for (const IdealEntry& e : r.entries) {
    sets.push_back({{"h", to_json(g, e.h)},
                    {"restriction_purely_infinite", e.restriction_purely_infinite},
                    {"restriction_condition_K", e.restriction_condition_K},
                    {"quotient_acyclic", e.quotient_acyclic},
                    {"witness", e.witness}});
  }
  Json out;
  out["condition_K"] = r.condition_K;
  out["count"] = r.entries.size();
  out["simple"] = r.simple_lattice;
  out["sets"] = std::move(sets);
  out["note"] = r.note;
  return out;
}

Json to_json(const KappaMatrix& k) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < k.m; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k.m; ++j) row.push_back(k.entries(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return {{"m", k.m}, {"entries", std::move(rows)}};
}

Json to_json(const KCoefficients& k) {
  Json values = Json::array();
  for (const Rational& v : k.values) values.push_back(v.get_str());
  return {{"m", k.m},
          {"a", k.a},
          {"b", k.b},
          {"d", k.d},
          {"values", std::move(values)},
          {"max_defect", k.max_defect.get_str()}};
}

Json to_json(const DirectedGraph& g, const Prop26Result& r) {
  Json table = Json::array();
  for (const Prop26Row& row : r.table)
    table.push_back({{"i", row.i},
                     {"K", row.k.get_str()},
                     {"defect", row.defect.get_str()},
                     {"alpha_count", to_json(row.alpha_count)}});
  Json out;
  out["m"] = r.m;
  out["mu"] = g.path_id(r.mu);
  out["nu"] = g.path_id(r.nu);
  out["d"] = r.d;
  out["route"] = to_string(r.route);
  out["max_coefficient"] = r.max_coefficient.get_str();
  out["table_max"] = r.table_max.get_str();
  out["consistent"] = r.max_coefficient == r.table_max;
  out["cross_checked"] = r.cross_checked;
  out["routes_agree"] = r.routes_agree;
  out["difference_terms"] = r.difference ? Json(r.difference->size()) : Json(nullptr);
  out["table"] = std::move(table);
  return out;
}

std::vector<std::string> citations_of(const Verdict& v) {
  std::vector<std::string> out;
  for (const RuleFiring& r : v.rules_fired) out.push_back(r.rule + ": " + r.citation);
  return out;
}

}  // namespace graphck
