#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphck/graph.hpp"
#include "graphck/matrix.hpp"

namespace graphck {

enum class AlgebraMode { Toeplitz, CuntzKrieger };

const char* to_string(AlgebraMode mode);

// theta_{row,col} in the compacts on paths of length < m.
struct MatrixUnit {
  Path row;
  Path col;
  friend auto operator<=>(const MatrixUnit&, const MatrixUnit&) = default;
  friend bool operator==(const MatrixUnit&, const MatrixUnit&) = default;
};

// s_alpha s_beta^*, optionally tensored with a matrix unit. r(alpha) = r(beta).
struct Word {
  Path alpha;
  Path beta;
  std::optional<MatrixUnit> unit;

  static Word vertex(VertexId v) { return {Path::at_vertex(v), Path::at_vertex(v), {}}; }
  static Word edge(const DirectedGraph& g, EdgeId e);
  static Word edge_adjoint(const DirectedGraph& g, EdgeId e);
  // s_mu s_nu^*; throws ContractViolation unless r(mu) = r(nu).
  static Word of(const Path& mu, const Path& nu);

  Word adjoint() const;
  bool tensored() const { return unit.has_value(); }

  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;
};

// The word product; nullopt is zero. Throws ContractViolation when exactly
// one factor is tensored.
std::optional<Word> multiply(const Word& a, const Word& b);

std::string format_word(const DirectedGraph& g, const Word& w);

// Finitely supported rational combination of words. Zero coefficients are
// never stored.
class FormalSum {
 public:
  using Terms = std::map<Word, Rational>;

  FormalSum() = default;
  FormalSum(const Word& w, const Rational& c = 1) { add(w, c); }

  void add(const Word& w, const Rational& c);
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Word& w) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Longest alpha or beta among the terms.
  std::size_t max_length() const;
  Rational max_abs_coefficient() const;

  FormalSum adjoint() const;

  FormalSum& operator+=(const FormalSum& b);
  FormalSum& operator-=(const FormalSum& b);
  FormalSum& operator*=(const Rational& c);
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(const Rational& c, FormalSum a) { return a *= c; }
  friend FormalSum operator*(const FormalSum& a, const FormalSum& b);
  friend bool operator==(const FormalSum& a, const FormalSum& b) = default;

  std::string to_string(const DirectedGraph& g) const;

 private:
  Terms terms_;
};

inline FormalSum vertex_projection(VertexId v) { return FormalSum(Word::vertex(v)); }

// In CK mode, words s_a s_b^* with |a| < depth and r(a) not a sink are
// replaced by sum_e s_{ae} s_{be}^* until none remain. Toeplitz mode is the
// identity. Requires depth >= the longest alpha.
FormalSum normal_form(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode,
                      std::size_t depth);

// Depth-free canonical form. In CK mode each word s_{a g} s_{b g}^* (common
// tail g stripped as far as possible) is filed under the key (a, b) and
// recorded on a trie of tails; a node's value is the coefficient sum along its
// branch, and any subtree on which that value is constant collapses to one
// leaf. This is the leveled normal form at infinite depth.
class CanonicalForm {
 public:
  struct Node {
    bool leaf = true;
    Rational value;
    std::vector<Node> children;  // parallel to out_edges of the node's vertex
    friend bool operator==(const Node&, const Node&) = default;
  };

  AlgebraMode mode() const { return mode_; }
  bool is_zero() const { return toeplitz_.is_zero() && classes_.empty(); }
  Rational max_abs_coefficient() const;
  // Leveled normal form at the given depth, reconstructed from the tries.
  FormalSum expand(const DirectedGraph& g, std::size_t depth) const;
  const std::map<Word, Node>& classes() const { return classes_; }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend CanonicalForm canonical_form(const DirectedGraph& g, const FormalSum& a,
                                      AlgebraMode mode);

 private:
  AlgebraMode mode_ = AlgebraMode::Toeplitz;
  FormalSum toeplitz_;
  std::map<Word, Node> classes_;
};

CanonicalForm canonical_form(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode);
bool equal_in(const DirectedGraph& g, const FormalSum& a, const FormalSum& b, AlgebraMode mode);
bool is_zero_in(const DirectedGraph& g, const FormalSum& a, AlgebraMode mode);

// Throws ContractViolation if any word uses a path that is not in g.
void check_words_in(const DirectedGraph& g, const FormalSum& a);

}  // namespace graphck
