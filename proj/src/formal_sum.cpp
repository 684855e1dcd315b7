#include "graphck/formal_sum.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include "graphck/errors.hpp"

namespace graphck {

const char* to_string(AlgebraMode mode) {
  return mode == AlgebraMode::Toeplitz ? "toeplitz" : "cuntz-krieger";
}

// ---- words --------------------------------------------------------------

Word Word::edge(const DirectedGraph& g, EdgeId e) {
  return {g.edge_path(e), Path::at_vertex(g.range(e)), {}};
}

Word Word::edge_adjoint(const DirectedGraph& g, EdgeId e) { return edge(g, e).adjoint(); }

Word Word::of(const Path& mu, const Path& nu) {
  if (mu.range() != nu.range()) throw ContractViolation("word s_mu s_nu^* needs r(mu) = r(nu)");
  return {mu, nu, {}};
}

Word Word::adjoint() const {
  Word w{beta, alpha, {}};
  if (unit) w.unit = MatrixUnit{unit->col, unit->row};
  return w;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.alpha <=> b.alpha; c != 0) return c;
  if (auto c = a.beta <=> b.beta; c != 0) return c;
  if (a.unit.has_value() != b.unit.has_value())
    return a.unit.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a.unit) return std::strong_ordering::equal;
  if (auto c = a.unit->row <=> b.unit->row; c != 0) return c;
  return a.unit->col <=> b.unit->col;
}

std::optional<Word> multiply(const Word& a, const Word& b) {
  if (a.tensored() != b.tensored())
    throw ContractViolation("product of tensored and untensored words");
  std::optional<MatrixUnit> unit;
  if (a.unit) {
    if (!(a.unit->col == b.unit->row)) return std::nullopt;
    unit = MatrixUnit{a.unit->row, b.unit->col};
  }
  // (s_a s_b^*)(s_c s_d^*)
  if (a.beta.is_prefix_of(b.alpha)) {
    return Word{a.alpha.concat(b.alpha.suffix_from(a.beta.length())), b.beta, unit};
  }
  if (b.alpha.is_prefix_of(a.beta)) {
    return Word{a.alpha, b.beta.concat(a.beta.suffix_from(b.alpha.length())), unit};
  }
  return std::nullopt;
}

std::string format_word(const DirectedGraph& g, const Word& w) {
  std::string out;
  if (w.alpha.is_vertex() && w.beta.is_vertex()) {
    out = "p_" + g.path_id(w.alpha);
  } else if (w.beta.is_vertex()) {
    out = "s_" + g.path_id(w.alpha);
  } else if (w.alpha.is_vertex()) {
    out = "s_" + g.path_id(w.beta) + "^*";
  } else {
    out = "s_" + g.path_id(w.alpha) + " s_" + g.path_id(w.beta) + "^*";
  }
  if (w.unit) out += " (x) theta[" + g.path_id(w.unit->row) + "," + g.path_id(w.unit->col) + "]";
  return out;
}

// ---- formal sums ----------------------------------------------------------

void FormalSum::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational FormalSum::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t FormalSum::max_length() const {
  std::size_t n = 0;
  for (const auto& [w, c] : terms_) n = std::max({n, w.alpha.length(), w.beta.length()});
  return n;
}

Rational FormalSum::max_abs_coefficient() const {
  Rational best = 0;
  for (const auto& [w, c] : terms_)
    if (abs(c) > best) best = abs(c);
  return best;
}

FormalSum FormalSum::adjoint() const {
  FormalSum out;
  for (const auto& [w, c] : terms_) out.add(w.adjoint(), c);
  return out;
}

FormalSum& FormalSum::operator+=(const FormalSum& b) {
  for (const auto& [w, c] : b.terms_) add(w, c);
  return *this;
}

FormalSum& FormalSum::operator-=(const FormalSum& b) {
  for (const auto& [w, c] : b.terms_) add(w, -c);
  return *this;
}

FormalSum& FormalSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

FormalSum operator*(const FormalSum& a, const FormalSum& b) {
  FormalSum out;
  for (const auto& [u, x] : a.terms_)
    for (const auto& [v, y] : b.terms_)
      if (auto w = multiply(u, v)) out.add(*w, x * y);
  return out;
}

std::string FormalSum::to_string(const DirectedGraph& g) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = abs(c);
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (a != 1) out += a.get_str() + " ";
    out += format_word(g, w);
    first = false;
  }
  return out;
}

// ---- normal forms -----------------------------------------------------------

void check_words_in(const DirectedGraph& g, const FormalSum& a) {
  for (const auto& [w, c] : a.terms()) {
    if (!g.is_valid(w.alpha) || !g.is_valid(w.beta) || w.alpha.range() != w.beta.range())
      throw ContractViolation("formal sum contains a word that is not over this graph");
  }
}

FormalSum normal_form(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode,
                      std::size_t depth) {
  check_words_in(g, a);
  if (mode == AlgebraMode::Toeplitz) return a;
  for (const auto& [w, c] : a.terms())
    if (w.alpha.length() > depth)
      throw ContractViolation("normal_form: depth " + std::to_string(depth) +
                              " is below the word length " + std::to_string(w.alpha.length()));
  FormalSum out;
  std::function<void(const Word&, const Rational&)> level = [&](const Word& w, const Rational& c) {
    VertexId v = w.alpha.range();
    if (w.alpha.length() >= depth || g.is_sink(v)) {
      out.add(w, c);
      return;
    }
    for (EdgeId e : g.out_edges(v))
      level(Word{w.alpha.append(e, g.range(e)), w.beta.append(e, g.range(e)), w.unit}, c);
  };
  for (const auto& [w, c] : a.terms()) level(w, c);
  return out;
}

namespace {

struct Trie {
  Rational coef;
  std::map<EdgeId, std::unique_ptr<Trie>> kids;
};

CanonicalForm::Node collapse(const DirectedGraph& g, const Trie* node, VertexId v,
                             const Rational& inherited) {
  CanonicalForm::Node out;
  Rational acc = inherited;
  if (node) acc += node->coef;
  if (g.is_sink(v) || !node || node->kids.empty()) {
    out.value = acc;
    return out;
  }
  for (EdgeId e : g.out_edges(v)) {
    auto it = node->kids.find(e);
    out.children.push_back(
        collapse(g, it == node->kids.end() ? nullptr : it->second.get(), g.range(e), acc));
  }
  const auto& first = out.children.front();
  bool uniform = std::all_of(out.children.begin(), out.children.end(), [&](const auto& c) {
    return c.leaf && c.value == first.value;
  });
  if (uniform) {
    out.value = out.children.front().value;
    out.children.clear();
    return out;
  }
  out.leaf = false;
  return out;
}

void max_abs_node(const CanonicalForm::Node& n, Rational& best) {
  if (n.leaf) {
    if (abs(n.value) > best) best = abs(n.value);
    return;
  }
  for (const auto& c : n.children) max_abs_node(c, best);
}

}  // namespace

CanonicalForm canonical_form(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode) {
  check_words_in(g, a);
  CanonicalForm out;
  out.mode_ = mode;
  if (mode == AlgebraMode::Toeplitz) {
    out.toeplitz_ = a;
    return out;
  }
  std::map<Word, Trie> tries;
  for (const auto& [w, c] : a.terms()) {
    std::size_t la = w.alpha.length();
    std::size_t lb = w.beta.length();
    std::size_t common = 0;
    while (common < la && common < lb &&
           w.alpha.edge(la - 1 - common) == w.beta.edge(lb - 1 - common))
      ++common;
    Word key{w.alpha.prefix(la - common), w.beta.prefix(lb - common), w.unit};
    Trie* node = &tries[key];
    for (std::size_t k = la - common; k < la; ++k) {
      auto& slot = node->kids[w.alpha.edge(k)];
      if (!slot) slot = std::make_unique<Trie>();
      node = slot.get();
    }
    node->coef += c;
  }
  for (auto& [key, trie] : tries) {
    CanonicalForm::Node n = collapse(g, &trie, key.alpha.range(), Rational(0));
    if (n.leaf && n.value == 0) continue;
    out.classes_.emplace(key, std::move(n));
  }
  return out;
}

Rational CanonicalForm::max_abs_coefficient() const {
  if (mode_ == AlgebraMode::Toeplitz) return toeplitz_.max_abs_coefficient();
  Rational best = 0;
  for (const auto& [key, n] : classes_) max_abs_node(n, best);
  return best;
}

FormalSum CanonicalForm::expand(const DirectedGraph& g, std::size_t depth) const {
  if (mode_ == AlgebraMode::Toeplitz) return toeplitz_;
  FormalSum out;
  // Emit the value of a leaf at the word (a, b) leveled down to `depth`.
  std::function<void(const Word&, const Rational&)> spread = [&](const Word& w,
                                                                 const Rational& c) {
    VertexId v = w.alpha.range();
    if (w.alpha.length() >= depth || g.is_sink(v)) {
      out.add(w, c);
      return;
    }
    for (EdgeId e : g.out_edges(v))
      spread(Word{w.alpha.append(e, g.range(e)), w.beta.append(e, g.range(e)), w.unit}, c);
  };
  std::function<void(const Node&, const Word&)> walk = [&](const Node& n, const Word& w) {
    if (n.leaf) {
      spread(w, n.value);
      return;
    }
    auto outs = g.out_edges(w.alpha.range());
    for (std::size_t k = 0; k < outs.size(); ++k) {
      EdgeId e = outs[k];
      walk(n.children[k], Word{w.alpha.append(e, g.range(e)), w.beta.append(e, g.range(e)), w.unit});
    }
  };
  for (const auto& [key, n] : classes_) walk(n, key);
  return out;
}

bool equal_in(const DirectedGraph& g, const FormalSum& a, const FormalSum& b, AlgebraMode mode) {
  return is_zero_in(g, a - b, mode);
}

bool is_zero_in(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode) {
  return canonical_form(g, a, mode).is_zero();
}

}  // namespace graphck
