#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphck/constructions.hpp"
#include "graphck/formal_sum.hpp"
#include "graphck/kappa.hpp"

namespace graphck {

enum class Prop26Route { Auto, Brute, Collapsed };

const char* to_string(Prop26Route route);

// Largest number of E(m) vertices for which the difference is built as a
// formal sum. Above it only the per-length table is reported.
inline constexpr std::size_t kDefaultMaxBlowupVertices = 100000;

struct Prop26Row {
  std::size_t i = 0;       // |alpha|
  Rational k;              // K_{m,i}
  Rational defect;         // |1 - K_{m,i}|
  Integer alpha_count;     // |r(mu) E^i|
};

// The difference
//   Lambda_m^{2m}(P_m(t_mu t_nu^*)) + Lambda_{m+l}^{2m+l}(Q_m(t_mu t_nu^*))
//     - iota_m(t_mu t_nu^*)            (l = ceil(m/2))
// in C*(E(m)). Brute evaluates the three terms literally. Collapsed writes it
// as sum_{alpha in r(mu)E^{<m}} (K_{m,|alpha|} - 1) t_{i(mu alpha)} t_{i(nu alpha)}^*.
struct Prop26Result {
  std::size_t m = 0;
  Path mu;
  Path nu;
  std::size_t d = 0;
  Prop26Route route = Prop26Route::Auto;
  KCoefficients k;
  std::vector<Prop26Row> table;
  // max over rows with alpha_count > 0 of the defect.
  Rational table_max;
  // Largest coefficient of the canonical form of the difference; equals
  // table_max when the difference was built.
  Rational max_coefficient;
  // Over E(m); absent when E(m) is above the size cap.
  std::optional<FormalSum> difference;
  // Both routes were evaluated and their differences coincide in C*(E(m)).
  bool cross_checked = false;
  bool routes_agree = true;
};

// Requires g without sinks (PreconditionError), r(mu) = r(nu) and
// m > |mu|, |nu| (ContractViolation). Auto uses the brute route when the
// literal sums stay small, the collapsed route otherwise, and cross-checks the
// two whenever both are cheap.
Prop26Result prop26_difference(const DirectedGraph& g, std::size_t m, const Path& mu,
                               const Path& nu, Prop26Route route = Prop26Route::Auto,
                               std::size_t max_blowup_vertices = kDefaultMaxBlowupVertices);

// Literal evaluation over a prebuilt E(m).
FormalSum prop26_brute(const BlowupGraph& b, const Path& mu, const Path& nu);
FormalSum prop26_collapsed(const BlowupGraph& b, const Path& mu, const Path& nu);

}  // namespace graphck
