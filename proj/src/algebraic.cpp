#include "urec/algebraic.hpp"

#include <sstream>

#include "urec/words.hpp"

namespace urec {

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational pow(const Rational& q, int k) {
  Rational base = k >= 0 ? q : Rational(1) / q;
  Rational r = 1;
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x_minus(const Rational& r) { return Poly({-r, Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

int Poly::sign_at(const Rational& x) const {
  Rational v = (*this)(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

Poly Poly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<int>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (zero()) return *this;
  std::vector<Rational> d = c_;
  Rational l = lead();
  for (auto& x : d) x /= l;
  return Poly(std::move(d));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] -= b.c_[i];
  return Poly(std::move(d));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return Poly();
  std::vector<Rational> d(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(d));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.zero()) throw Error("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  std::vector<Rational> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational f = r[i + b.c_.size() - 1] / b.lead();
    q[i] = f;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] -= f * b.c_[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

std::string Poly::str() const {
  if (zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    if (c < 0) c = -c;
    if (c != 1 || i == 0) out << c;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly squarefree(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

Sturm::Sturm(const Poly& p) {
  chain_.push_back(p);
  if (p.degree() <= 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    Poly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.zero()) break;
    chain_.push_back(Poly() - r);
  }
}

int Sturm::changes(const Rational& x) const {
  int count = 0, last = 0;
  for (const Poly& q : chain_) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int Sturm::count(const Rational& a, const Rational& b) const { return changes(a) - changes(b); }

Rational root_bound(const Poly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = p.coeffs()[i] / p.lead();
    if (r < 0) r = -r;
    m = std::max(m, r);
  }
  return m + 1;
}

Poly characteristic_polynomial(const std::vector<std::vector<Rational>>& a) {
  // Faddeev-LeVerrier.
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<Rational>>;
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Mat m(n, std::vector<Rational>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    Mat am(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        am[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = am;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / static_cast<int>(k);
  }
  return Poly(std::move(c));
}

AlgebraicReal::AlgebraicReal(const Poly& p, Rational lo, Rational hi)
    : p_(squarefree(p)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (p_.degree() < 1) throw Error("algebraic number needs a nonconstant polynomial");
  if (Sturm(p_).count(lo_, hi_) != 1) throw Error("interval does not isolate a single root");
}

AlgebraicReal AlgebraicReal::rational(const Rational& q) {
  return AlgebraicReal(Poly::x_minus(q), q - 1, q);
}

AlgebraicReal AlgebraicReal::largest_root(const Poly& p) {
  Poly s = squarefree(p);
  if (s.degree() < 1) throw Error("constant polynomial has no roots");
  Sturm st(s);
  Rational hi = root_bound(s);
  Rational lo = -hi;
  if (st.count(lo, hi) == 0) throw Error("polynomial has no real root");
  while (st.count(lo, hi) > 1) {
    Rational mid = (lo + hi) / 2;
    if (st.count(mid, hi) >= 1) lo = mid;
    else hi = mid;
  }
  return AlgebraicReal(s, lo, hi);
}

void AlgebraicReal::bisect() {
  Rational mid = (lo_ + hi_) / 2;
  if (Sturm(p_).count(lo_, mid) == 1) hi_ = mid;
  else lo_ = mid;
}

void AlgebraicReal::refine(const Rational& w) {
  Sturm st(p_);
  while (hi_ - lo_ > w) {
    Rational mid = (lo_ + hi_) / 2;
    if (st.count(lo_, mid) == 1) hi_ = mid;
    else lo_ = mid;
  }
}

std::optional<BigInt> AlgebraicReal::integer_value() const {
  AlgebraicReal x = *this;
  x.refine(Rational(1, 4));
  for (BigInt n : {BigInt(boost::multiprecision::numerator(x.lo_) / boost::multiprecision::denominator(x.lo_)),
                   BigInt(boost::multiprecision::numerator(x.hi_) / boost::multiprecision::denominator(x.hi_))}) {
    for (BigInt c = n - 1; c <= n + 1; ++c) {
      Rational r(c);
      if (r > x.lo_ && r <= x.hi_ && p_(r) == 0) return c;
    }
  }
  return std::nullopt;
}

double AlgebraicReal::approx() const {
  AlgebraicReal x = *this;
  x.refine(Rational(1, BigInt(1) << 60));
  return to_double((x.lo_ + x.hi_) / 2);
}

std::string AlgebraicReal::str() const {
  if (auto n = integer_value()) return n->str();
  std::ostringstream out;
  out.precision(12);
  out << approx() << " (root of " << p_.str() << ")";
  return out.str();
}

std::strong_ordering compare(AlgebraicReal a, AlgebraicReal b) {
  auto disjoint = [&]() -> std::optional<std::strong_ordering> {
    if (a.hi_ <= b.lo_) return std::strong_ordering::less;  // a <= a.hi <= b.lo < b
    if (b.hi_ <= a.lo_) return std::strong_ordering::greater;
    return std::nullopt;
  };
  if (auto r = disjoint()) return *r;
  Poly g = gcd(a.p_, b.p_);
  if (g.degree() >= 1) {
    Rational lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
    if (lo < hi && Sturm(squarefree(g)).count(lo, hi) >= 1) return std::strong_ordering::equal;
  }
  while (true) {
    if (a.width() >= b.width()) a.bisect();
    else b.bisect();
    if (auto r = disjoint()) return *r;
  }
}

}  // namespace urec
