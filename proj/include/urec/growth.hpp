#pragma once

// Growth orders (d, θ) of letters, |phi^k(a)| ~ k^d θ^k, and certified
// geometric bounds on |psi(phi^k(a))| when all letters share one order.

#include <compare>
#include <optional>
#include <vector>

#include "urec/algebraic.hpp"
#include "urec/words.hpp"

namespace urec {

using Matrix = std::vector<std::vector<Rational>>;

/// M[b][a] = number of occurrences of b in phi(a).
Matrix incidence_matrix(const Morphism& phi);

struct GrowthOrder {
  unsigned d = 0;
  AlgebraicReal theta;

  std::string str() const;
};

/// Lexicographic in (θ, d).
std::strong_ordering compare(const GrowthOrder& a, const GrowthOrder& b);
inline bool operator==(const GrowthOrder& a, const GrowthOrder& b) {
  return compare(a, b) == std::strong_ordering::equal;
}

GrowthOrder growth_order(const Morphism& phi, Letter a);
std::vector<GrowthOrder> growth_orders(const Morphism& phi);

struct SameOrder {
  bool same = false;
  std::optional<GrowthOrder> order;  // set when same
};
SameOrder all_same_order(const Morphism& phi);

struct GrowthBounds {
  Rational theta_lo, theta_hi;
  Rational C1, C2;
  /// v with (I - M/θ_hi)·v = 1 in letter-length form; |phi^k(a)| <= v_a θ_hi^k.
  std::vector<Rational> upper;
  /// w with N w >= θ_lo w for the whole matrix when one exists, else one
  /// per max-root component (restricted N_S).
  std::vector<std::vector<Rational>> lower;
};

/// Requires every letter to have order (0, θ) for a common θ > 1.
GrowthBounds growth_bounds(const Morphism& phi, const Morphism& psi,
                           const Rational& width = Rational(1, 1000000));

/// Exact check of C1 θ_lo^k <= |psi(phi^k(a))| <= C2 θ_hi^k for k <= kmax.
bool check_bounds(const Morphism& phi, const Morphism& psi, const GrowthBounds& b, int kmax);

/// |psi(phi^k(a))| for all letters, exactly.
std::vector<BigInt> image_lengths(const Morphism& phi, const Morphism& psi, int k);

}  // namespace urec
