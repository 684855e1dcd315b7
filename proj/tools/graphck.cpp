// graphck: command-line front end.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "graphck/approximation.hpp"
#include "graphck/classifier.hpp"
#include "graphck/constructions.hpp"
#include "graphck/dsl.hpp"
#include "graphck/errors.hpp"
#include "graphck/homomorphisms.hpp"
#include "graphck/kappa.hpp"
#include "graphck/ktheory.hpp"
#include "graphck/report.hpp"

namespace fs = std::filesystem;
using namespace graphck;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string file;
  bool json = false;
  std::optional<std::size_t> m;
  std::optional<std::size_t> truncation;
  std::optional<std::size_t> depth;
  std::size_t max_vertices = kDefaultMaxLatticeVertices;
  std::string ideal;
  std::string window;
  std::string mu;
  std::string nu;
  std::string which = "iota";
  std::string vertices;
  std::string edges;
  bool subquotients = false;
  std::optional<std::size_t> verify_m;
};

struct Outcome {
  int exit = kPass;
  Json result;
  std::vector<std::string> citations;
  std::string digest;
  std::string text;
};

const char* const kCiteMultiplication =
    "the composite of the blow-up inclusion and the Cuntz-Krieger family j_m induces "
    "multiplication by m on K-theory";
const char* const kCiteSubquotients =
    "the same composite restricts to every gauge-invariant ideal and passes to quotients and "
    "subquotients, acting as multiplication by m on each";
const char* const kCiteKTheory = "K_0 = coker(1 - A^t) and K_1 = ker(1 - A^t) for graphs without sinks";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

VertexSet vertex_list(const DirectedGraph& g, const std::string& s) {
  VertexSet out(g.vertex_count());
  for (const std::string& id : split_list(s)) {
    auto v = g.find_vertex(id);
    if (!v) throw UsageError("unknown vertex " + id);
    out.insert(*v);
  }
  return out;
}

std::size_t need_m(const Options& o) {
  if (!o.m) throw UsageError(o.command + " needs --m");
  if (*o.m == 0) throw UsageError("--m must be positive");
  return *o.m;
}

Path path_arg(const DirectedGraph& g, const std::string& spec, const char* flag) {
  if (spec.empty()) throw UsageError(std::string("missing ") + flag);
  try {
    return g.parse_path(spec);
  } catch (const ContractViolation& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  out << "nuclear dimension: [" << format_bound(v.lower) << ", " << format_bound(v.upper) << "]\n";
  if (v.toeplitz_upper) out << "Toeplitz algebra: at most " << *v.toeplitz_upper << "\n";
  for (const RuleFiring& r : v.rules_fired)
    out << "  " << r.rule << ": " << r.citation << " (" << r.witness << ")\n";
  return out.str();
}

std::string ideals_text(const DirectedGraph& g, const IdealReport& r) {
  std::ostringstream out;
  out << r.entries.size() << " hereditary saturated sets\n";
  for (const IdealEntry& e : r.entries) {
    out << "  " << format_vertex_set(g, e.h)
        << (e.restriction_purely_infinite ? "  restriction purely infinite" : "")
        << (e.quotient_acyclic ? "  quotient acyclic" : "") << (e.witness ? "  [witness]" : "")
        << "\n";
  }
  out << r.note << "\n";
  return out.str();
}

std::string ktheory_text(const KTheoryResult& k) {
  std::ostringstream out;
  out << "K0 = Z^" << k.k0_rank;
  for (const Integer& t : k.k0_torsion) out << " + Z/" << t.get_str();
  out << "\nK1 = Z^" << k.k1_rank << "\n";
  return out.str();
}

std::string check_text(const MultiplicationCheck& c) {
  return std::string(c.pass ? "PASS" : "FAIL") + "  " + c.target + "  m=" + std::to_string(c.m) +
         (c.failure.empty() ? "" : "  " + c.failure) + "\n";
}

// ---- commands ---------------------------------------------------------------

Outcome cmd_analyze(const DirectedGraph& g, const Options& o) {
  Outcome out;
  Json r;
  r["vertices"] = g.vertex_count();
  r["edges"] = g.edge_count();
  Json s = Json::array();
  for (VertexId v : sinks(g)) s.push_back(g.vertex_id(v));
  r["sinks"] = std::move(s);
  r["condition_K"] = satisfies_condition_K(g);
  r["connects_to_cycle"] = every_vertex_connects_to_cycle(g);
  r["acyclic"] = is_acyclic(g);
  r["purely_infinite"] = purely_infinite(g);
  const IdealReport ideals = ideal_report(g, o.max_vertices);
  r["ideals"] = to_json(g, ideals);
  std::ostringstream text;
  text << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n"
       << "Condition (K): " << (satisfies_condition_K(g) ? "yes" : "no") << "\n"
       << "every vertex reaches a cycle: " << (every_vertex_connects_to_cycle(g) ? "yes" : "no")
       << "\n"
       << ideals_text(g, ideals);
  if (has_sinks(g) || g.truncated_tails()) {
    r["ktheory"] = {{"skipped", "graph has sinks"}};
    text << "K-theory: skipped (graph has sinks)\n";
  } else {
    const KTheoryResult k = graph_k_theory(g);
    r["ktheory"] = to_json(k);
    text << ktheory_text(k);
    out.citations.push_back(kCiteKTheory);
  }
  const Verdict v = classify(g, o.max_vertices);
  r["classification"] = to_json(g, v);
  text << verdict_text(v);
  for (auto& c : citations_of(v)) out.citations.push_back(c);
  out.result = std::move(r);
  out.text = text.str();
  return out;
}

Outcome cmd_ktheory(const DirectedGraph& g, const Options& o) {
  Outcome out;
  const KTheoryResult k = graph_k_theory(g);
  Json r = to_json(k);
  Json ver = Json::array();
  std::ostringstream text;
  text << ktheory_text(k);
  out.citations.push_back(kCiteKTheory);
  bool pass = true;
  auto add_check = [&](const MultiplicationCheck& c) {
    Json j = to_json(c);
    j["recheck"] = c.pass && recheck_certificate(g, c);
    ver.push_back(std::move(j));
    pass = pass && c.pass;
    text << check_text(c);
  };
  if (o.verify_m && *o.verify_m == 0) throw UsageError("--verify-m must be positive");
  if (o.verify_m && !o.subquotients) {
    add_check(verify_multiplication_by_m(g, *o.verify_m));
    out.citations.push_back(kCiteMultiplication);
  }
  if (o.subquotients) {
    const std::size_t m = o.verify_m ? *o.verify_m : (o.m ? *o.m : 2);
    const SubquotientReport rep = verify_on_subquotients(g, m, o.max_vertices);
    Json skipped = Json::array();
    for (const SubquotientEntry& e : rep.entries) {
      if (e.check) {
        add_check(*e.check);
      } else {
        skipped.push_back({{"target", e.target}, {"reason", e.skipped}});
        text << "SKIP  " << e.target << "  " << e.skipped << "\n";
      }
    }
    r["skipped"] = std::move(skipped);
    out.citations.push_back(kCiteSubquotients);
  }
  r["verifications"] = std::move(ver);
  out.result = std::move(r);
  out.text = text.str();
  out.exit = pass ? kPass : kFail;
  return out;
}

Outcome cmd_verify_m(const DirectedGraph& g, const Options& o) {
  const std::size_t m = need_m(o);
  Outcome out;
  const MultiplicationCheck c = verify_multiplication_by_m(g, m);
  const bool recheck = c.pass && recheck_certificate(g, c);
  Json r = to_json(c);
  r["recheck"] = recheck;
  out.result = std::move(r);
  out.citations.push_back(kCiteMultiplication);
  out.text = check_text(c) + (c.pass ? std::string("certificate rechecked: ") +
                                           (recheck ? "yes" : "no") + "\n"
                                     : "");
  out.exit = c.pass && recheck ? kPass : kFail;
  return out;
}

Outcome cmd_ideals(const DirectedGraph& g, const Options& o) {
  Outcome out;
  const IdealReport r = ideal_report(g, o.max_vertices);
  out.result = to_json(g, r);
  out.text = ideals_text(g, r);
  return out;
}

Outcome cmd_classify(const DirectedGraph& g, const Options& o) {
  Outcome out;
  const Verdict v = classify(g, o.max_vertices);
  out.result = to_json(g, v);
  out.citations = citations_of(v);
  out.text = verdict_text(v);
  return out;
}

Outcome cmd_blowup(const DirectedGraph& g, const Options& o) {
  const std::size_t m = need_m(o);
  Outcome out;
  const BlowupGraph b = blowup_graph(g, m);
  const std::string dsl = emit_graph(b.graph);
  out.result = {{"m", m},
                {"vertices", b.graph.vertex_count()},
                {"edges", b.graph.edge_count()},
                {"graph", dsl}};
  out.text = dsl;
  return out;
}

Outcome cmd_jeong_park(const DirectedGraph& g, const Options& o) {
  Outcome out;
  std::vector<VertexId> vs;
  std::vector<EdgeId> es;
  if (o.vertices.empty() && o.edges.empty()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) vs.push_back(v);
  } else {
    for (VertexId v : vertex_list(g, o.vertices).members()) vs.push_back(v);
    for (const std::string& id : split_list(o.edges)) {
      auto e = g.find_edge(id);
      if (!e) throw UsageError("unknown edge " + id);
      es.push_back(*e);
    }
  }
  const DirectedGraph h = jeong_park_subgraph(g, vs, es);
  bool contains = true;
  for (VertexId v : vs) contains = contains && h.find_vertex(g.vertex_id(v)).has_value();
  for (EdgeId e : es) contains = contains && h.find_edge(g.edge(e).id).has_value();
  bool sub = true;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    auto ge = g.find_edge(h.edge(e).id);
    sub = sub && ge && g.vertex_id(g.source(*ge)) == h.vertex_id(h.source(e)) &&
          g.vertex_id(g.range(*ge)) == h.vertex_id(h.range(e));
  }
  const bool k = satisfies_condition_K(h);
  const bool reach = every_vertex_connects_to_cycle(h);
  const std::string dsl = emit_graph(h);
  out.result = {{"vertices", h.vertex_count()},
                {"edges", h.edge_count()},
                {"contains_inputs", contains},
                {"is_subgraph", sub},
                {"condition_K", k},
                {"connects_to_cycle", reach},
                {"graph", dsl}};
  out.text = dsl;
  out.exit = contains && sub && k && reach ? kPass : kFail;
  return out;
}

Outcome cmd_kappa(const Options& o) {
  const std::size_t m = need_m(o);
  Outcome out;
  const KappaMatrix k = kappa_matrix(m);
  Json r = to_json(k);
  r["norm_bound"] = schur_norm_bound(m).get_str();
  out.result = std::move(r);
  out.text = k.to_string();
  return out;
}

Outcome cmd_approx(const DirectedGraph& g, const Options& o) {
  const std::size_t m = need_m(o);
  const Path mu = path_arg(g, o.mu, "--mu");
  const Path nu = path_arg(g, o.nu.empty() ? o.mu : o.nu, "--nu");
  Outcome out;
  const Prop26Result r = prop26_difference(g, m, mu, nu);
  out.result = to_json(g, r);
  std::ostringstream text;
  text << "max coefficient: " << r.max_coefficient.get_str() << "  (route " << to_string(r.route)
       << (r.cross_checked ? ", cross-checked" : "") << ")\n"
       << "i  K_{m,i}  |1-K|  paths\n";
  for (const Prop26Row& row : r.table)
    text << row.i << "  " << row.k.get_str() << "  " << row.defect.get_str() << "  "
         << row.alpha_count.get_str() << "\n";
  out.text = text.str();
  out.exit = r.routes_agree && r.max_coefficient == r.table_max ? kPass : kFail;
  return out;
}

Outcome cmd_verify_hom(const DirectedGraph& g, const Options& o) {
  const std::size_t m = need_m(o);
  Outcome out;
  const BlowupGraph b = blowup_graph(g, m);
  TckCheck c;
  std::string family;
  if (o.which == "iota") {
    c = verify_tck_family(g, iota_images(b), b.graph, AlgebraMode::Toeplitz);
    family = "Toeplitz-Cuntz-Krieger family of E in the Toeplitz algebra of E(m)";
  } else if (o.which == "jm") {
    c = verify_tck_family(b.graph, jm_images(b), g, AlgebraMode::CuntzKrieger);
    family = "Cuntz-Krieger family of E(m) in C*(E) tensor compacts";
  } else {
    throw UsageError("--which must be iota or jm");
  }
  out.result = {{"which", o.which},
                {"m", m},
                {"family", family},
                {"pass", c.ok},
                {"failed_relation", c.ok ? Json(nullptr) : Json(c.failed_relation)}};
  out.text = std::string(c.ok ? "PASS" : "FAIL") + "  " + o.which + "  m=" + std::to_string(m) +
             (c.ok ? "" : "  " + c.failed_relation) + "\n";
  out.exit = c.ok ? kPass : kFail;
  return out;
}

Outcome cmd_quasidiag(const DirectedGraph& g, const Options& o) {
  if (o.ideal.empty()) throw UsageError("quasidiag needs --ideal");
  const VertexSet h = vertex_list(g, o.ideal);
  const VertexSet x = o.window.empty() ? VertexSet::all(g.vertex_count()) : vertex_list(g, o.window);
  Outcome out;
  const FormalSum e = gabe_approximate_identity(g, h, x);
  const bool projection = equal_in(g, e * e, e, AlgebraMode::CuntzKrieger) &&
                          equal_in(g, e.adjoint(), e, AlgebraMode::CuntzKrieger);
  std::vector<Word> words;
  for (VertexId v = 0; v < g.vertex_count(); ++v) words.push_back(Word::vertex(v));
  for (EdgeId f = 0; f < g.edge_count(); ++f) {
    words.push_back(Word::edge(g, f));
    words.push_back(Word::edge_adjoint(g, f));
  }
  std::size_t inside = 0;
  Json failures = Json::array();
  Json outside = Json::array();
  for (const Word& w : words) {
    const bool covered = word_vertices(g, w).is_subset_of(x);
    const bool commutes = commutator_is_zero(g, e, w);
    if (covered) {
      ++inside;
      if (!commutes) failures.push_back(format_word(g, w));
    } else if (!commutes) {
      outside.push_back(format_word(g, w));
    }
  }
  const bool pass = projection && failures.empty();
  out.result = {{"ideal", to_json(g, h)},
                {"window", to_json(g, x)},
                {"e_X", e.to_string(g)},
                {"projection", projection},
                {"words_in_window", inside},
                {"noncommuting_in_window", failures},
                {"noncommuting_outside_window", outside},
                {"pass", pass}};
  out.citations.push_back(
      "paths entering a gauge-invariant ideal with AF quotient give an approximate identity of "
      "projections that is quasicentral");
  out.text = "e_X = " + e.to_string(g) + "\nprojection: " + (projection ? "yes" : "no") +
             "\ngenerator words inside the window commuting with e_X: " +
             std::to_string(inside - failures.size()) + "/" + std::to_string(inside) + "\n" +
             (pass ? "PASS\n" : "FAIL\n");
  out.exit = pass ? kPass : kFail;
  return out;
}

Outcome run_on_graph(const Options& o) {
  if (o.command == "kappa") return cmd_kappa(o);
  if (o.file.empty()) throw UsageError(o.command + " needs a graph file");
  const DirectedGraph g = parse_graph(o.file == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                                    : read_file(o.file));
  Outcome out;
  if (o.command == "analyze") out = cmd_analyze(g, o);
  else if (o.command == "ktheory") out = cmd_ktheory(g, o);
  else if (o.command == "ideals") out = cmd_ideals(g, o);
  else if (o.command == "classify") out = cmd_classify(g, o);
  else if (o.command == "blowup") out = cmd_blowup(g, o);
  else if (o.command == "jeong-park") out = cmd_jeong_park(g, o);
  else if (o.command == "approx") out = cmd_approx(g, o);
  else if (o.command == "verify-hom") out = cmd_verify_hom(g, o);
  else if (o.command == "verify-m") out = cmd_verify_m(g, o);
  else if (o.command == "quasidiag") out = cmd_quasidiag(g, o);
  else throw UsageError("unknown command " + o.command);
  out.digest = input_digest(g);
  return out;
}

struct Failure {
  int exit;
  std::string kind;
  std::string message;
};

// Runs one command, mapping exceptions to exit codes.
std::variant<Outcome, Failure> run_guarded(const Options& o) {
  try {
    return run_on_graph(o);
  } catch (const ParseError& e) {
    return Failure{kUsage, "parse",
                   "parse error at line " + std::to_string(e.line()) + ", column " +
                       std::to_string(e.column()) + ": " + e.what()};
  } catch (const UsageError& e) {
    return Failure{kUsage, "usage", e.what()};
  } catch (const PreconditionError& e) {
    return Failure{kUsage, "precondition", e.what()};
  } catch (const ContractViolation& e) {
    return Failure{kUsage, "contract", e.what()};
  } catch (const ResourceError& e) {
    return Failure{kResource, "resource", e.what()};
  }
}

// ---- corpus -------------------------------------------------------------------

Options fixture_options(const Json& f, const fs::path& dir) {
  Options o;
  o.command = f.at("command").get<std::string>();
  if (f.contains("graph")) o.file = (dir / f.at("graph").get<std::string>()).string();
  const Json opts = f.value("options", Json::object());
  auto get_size = [&](const char* key) -> std::optional<std::size_t> {
    if (!opts.contains(key)) return std::nullopt;
    return opts.at(key).get<std::size_t>();
  };
  o.m = get_size("m");
  o.truncation = get_size("truncation");
  o.depth = get_size("depth");
  o.verify_m = get_size("verify_m");
  if (auto mv = get_size("max_vertices")) o.max_vertices = *mv;
  o.ideal = opts.value("ideal", "");
  o.window = opts.value("window", "");
  o.mu = opts.value("mu", "");
  o.nu = opts.value("nu", "");
  o.which = opts.value("which", "iota");
  o.vertices = opts.value("vertices", "");
  o.edges = opts.value("edges", "");
  o.subquotients = opts.value("subquotients", false);
  return o;
}

int run_corpus(const std::string& dir, bool json) {
  if (!fs::is_directory(dir)) throw UsageError(dir + " is not a directory");
  std::vector<fs::path> fixtures;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") fixtures.push_back(entry.path());
  std::sort(fixtures.begin(), fixtures.end());
  if (fixtures.empty()) throw UsageError("no fixtures in " + dir);

  std::size_t failed = 0;
  Json results = Json::array();
  for (const fs::path& p : fixtures) {
    std::string problem;
    try {
      const Json f = Json::parse(read_file(p.string()));
      const Options o = fixture_options(f, fs::path(dir));
      const int expected_exit = f.value("expected_exit", 0);
      auto r = run_guarded(o);
      if (auto* fail = std::get_if<Failure>(&r)) {
        if (fail->exit != expected_exit) {
          problem = "exit " + std::to_string(fail->exit) + ": " + fail->message;
        } else if (f.contains("expected_error") &&
                   fail->message.find(f.at("expected_error").get<std::string>()) ==
                       std::string::npos) {
          problem = "error message mismatch: " + fail->message;
        }
      } else {
        const Outcome& out = std::get<Outcome>(r);
        if (out.exit != expected_exit) {
          problem = "exit " + std::to_string(out.exit) + ", expected " +
                    std::to_string(expected_exit);
        } else if (f.contains("expected") && out.result != f.at("expected")) {
          problem = "result differs: " + out.result.dump();
        } else if (f.contains("input_digest") &&
                   out.digest != f.at("input_digest").get<std::string>()) {
          problem = "input digest differs";
        }
      }
    } catch (const std::exception& e) {
      problem = std::string("bad fixture: ") + e.what();
    }
    if (!problem.empty()) ++failed;
    if (json) {
      results.push_back({{"fixture", p.filename().string()}, {"pass", problem.empty()}});
    } else {
      std::cout << (problem.empty() ? "PASS  " : "FAIL  ") << p.filename().string()
                << (problem.empty() ? "" : "  " + problem) << "\n";
    }
  }
  if (json) {
    Json r = make_report("corpus", "", {{"fixtures", results}, {"failed", failed}}, {});
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << fixtures.size() - failed << "/" << fixtures.size() << " fixtures pass\n";
  }
  return failed == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphck: directed graphs, their C*-algebras and K-theory"};
  app.require_subcommand(1);
  Options o;
  std::string corpus_dir;

  auto add_common = [&](CLI::App* sub, bool needs_file) {
    if (needs_file) sub->add_option("file", o.file, "graph file in the DSL ('-' for stdin)")->required();
    sub->add_flag("--json", o.json, "emit a JSON report");
    sub->add_option("--max-vertices", o.max_vertices, "bound for ideal lattice enumeration");
    sub->add_option("--truncation", o.truncation, "path-space truncation N");
    sub->add_option("--depth", o.depth, "leveling depth");
  };
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"analyze", "conditions, ideals, K-theory and classification"},
      {"ktheory", "K-theory via Smith normal form"},
      {"ideals", "hereditary saturated sets"},
      {"classify", "nuclear dimension bounds"},
      {"blowup", "the blow-up graph E(m) in the DSL"},
      {"jeong-park", "finite subgraph with Condition (K) containing given vertices and edges"},
      {"kappa", "the compression matrix kappa_m"},
      {"approx", "difference of the P_m/Q_m approximation and the blow-up inclusion"},
      {"verify-hom", "check the iota_m or j_m generator images"},
      {"verify-m", "check multiplication by m on K-theory"},
      {"quasidiag", "quasicentral approximate identity for an ideal"},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    const std::string name = s.name;
    add_common(sub, name != "kappa");
    sub->callback([&o, name] { o.command = name; });
    if (name == "kappa" || name == "blowup" || name == "approx" || name == "verify-hom" ||
        name == "verify-m")
      sub->add_option("--m", o.m, "blow-up parameter m");
    if (name == "ktheory") {
      sub->add_option("--m", o.m, "m for --subquotients (default 2)");
      sub->add_flag("--subquotients", o.subquotients, "check every ideal, quotient and subquotient");
      sub->add_option("--verify-m", o.verify_m, "check multiplication by this m");
    }
    if (name == "approx") {
      sub->add_option("--mu", o.mu, "path: dot-joined edge ids or a vertex id");
      sub->add_option("--nu", o.nu, "path (defaults to --mu)");
    }
    if (name == "verify-hom") sub->add_option("--which", o.which, "iota or jm");
    if (name == "quasidiag") {
      sub->add_option("--ideal", o.ideal, "hereditary saturated set v1,v2,...");
      sub->add_option("--window", o.window, "finite window X (default: all vertices)");
    }
    if (name == "jeong-park") {
      sub->add_option("--vertices", o.vertices, "vertices to contain");
      sub->add_option("--edges", o.edges, "edges to contain");
    }
  }
  CLI::App* corpus = app.add_subcommand("corpus", "run the fixtures in a directory");
  corpus->add_option("dir", corpus_dir, "fixture directory")->required();
  corpus->add_flag("--json", o.json, "emit a JSON summary");
  corpus->callback([&o] { o.command = "corpus"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (o.command == "corpus") {
    try {
      return run_corpus(corpus_dir, o.json);
    } catch (const std::exception& e) {
      std::cerr << "graphck: " << e.what() << "\n";
      return kUsage;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  auto r = run_guarded(o);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (auto* fail = std::get_if<Failure>(&r)) {
    if (o.json) {
      Json j;
      j["schema"] = kReportSchema;
      j["command"] = o.command;
      j["error"] = {{"kind", fail->kind}, {"message", fail->message}};
      std::cout << j.dump(2) << "\n";
    }
    std::cerr << "graphck: " << fail->message << "\n";
    return fail->exit;
  }
  Outcome& out = std::get<Outcome>(r);
  if (o.json) {
    Json j = make_report(o.command, out.digest, out.result, out.citations);
    j["timing_ms"] = ms;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << out.text;
    for (const std::string& c : out.citations) std::cout << "  cites: " << c << "\n";
  }
  return out.exit;
}
