#pragma once

// Exact rational polynomials and real algebraic numbers given by a
// squarefree polynomial and an isolating interval (lo, hi].

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace urec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational pow(const Rational& q, int k);

/// Coefficients from the constant term upward; no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly x_minus(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;
  Poly derivative() const;
  Poly monic() const;

  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);
Poly squarefree(const Poly& p);

/// Sturm chain of a squarefree polynomial.
class Sturm {
 public:
  explicit Sturm(const Poly& p);
  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const;

 private:
  int changes(const Rational& x) const;
  std::vector<Poly> chain_;
};

/// Upper bound on the absolute values of the roots.
Rational root_bound(const Poly& p);

/// Characteristic polynomial det(xI - A) of a square rational matrix.
Poly characteristic_polynomial(const std::vector<std::vector<Rational>>& a);

class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  /// The unique root of p in (lo, hi]; p is made squarefree.
  AlgebraicReal(const Poly& p, Rational lo, Rational hi);
  static AlgebraicReal rational(const Rational& q);
  /// Largest real root; throws when p has none.
  static AlgebraicReal largest_root(const Poly& p);

  const Poly& poly() const { return p_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }

  /// Halves the interval until it is at most `w` wide.
  void refine(const Rational& w);
  /// The value when it is an integer (the only rational roots of monic
  /// integer polynomials).
  std::optional<BigInt> integer_value() const;
  double approx() const;

  std::string str() const;

  friend std::strong_ordering compare(AlgebraicReal a, AlgebraicReal b);
  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
    return compare(a, b) == std::strong_ordering::equal;
  }
  friend bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) {
    return compare(a, b) == std::strong_ordering::less;
  }

 private:
  void bisect();
  Poly p_;
  Rational lo_, hi_;
};

}  // namespace urec
