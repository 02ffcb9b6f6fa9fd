#include "urec/growth.hpp"

#include <cmath>
#include <queue>

#include "urec/letter_graph.hpp"

namespace urec {

Matrix incidence_matrix(const Morphism& phi) {
  const std::size_t n = phi.source_size();
  Matrix m(n, std::vector<Rational>(n));
  for (Letter a = 0; a < n; ++a)
    for (Letter b : phi(a)) m[b][a] += 1;
  return m;
}

std::string GrowthOrder::str() const {
  return "(" + std::to_string(d) + ", " + theta.str() + ")";
}

std::strong_ordering compare(const GrowthOrder& a, const GrowthOrder& b) {
  auto t = compare(a.theta, b.theta);
  if (t != std::strong_ordering::equal) return t;
  return a.d <=> b.d;
}

namespace {

// N_S[i][j] = occurrences of S[j] in phi(S[i]).
Matrix restricted(const Morphism& phi, const std::vector<Letter>& s) {
  Matrix m(s.size(), std::vector<Rational>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Letter b : phi(s[i]))
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j] == b) m[i][j] += 1;
  return m;
}

struct Analysis {
  Components comps;
  Adjacency graph;
  std::vector<AlgebraicReal> root;  // per component
  std::vector<std::size_t> theta_of;  // component whose root is θ(c)
  std::vector<unsigned> chain;
};

Analysis analyse(const Morphism& phi) {
  if (!phi.non_erasing()) throw Error("growth analysis requires a non-erasing substitution");
  Analysis an;
  an.graph = letter_graph(phi);
  an.comps = strongly_connected(an.graph);
  const std::size_t nc = an.comps.members.size();
  auto cyclic = cyclic_letters(an.graph);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& mem = an.comps.members[c];
    if (!cyclic[mem[0]]) {
      an.root.push_back(AlgebraicReal::rational(0));
      continue;
    }
    an.root.push_back(AlgebraicReal::largest_root(characteristic_polynomial(restricted(phi, mem))));
  }
  std::vector<std::vector<std::size_t>> succ(nc);
  for (Letter a = 0; a < an.graph.size(); ++a)
    for (Letter b : an.graph[a]) {
      std::size_t ca = an.comps.of[a], cb = an.comps.of[b];
      if (ca != cb) succ[ca].push_back(cb);
    }
  an.theta_of.resize(nc);
  an.chain.assign(nc, 0);
  // Successor components have smaller ids.
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t best = c;
    for (std::size_t s : succ[c])
      if (an.root[best] < an.root[an.theta_of[s]]) best = an.theta_of[s];
    an.theta_of[c] = best;
    const AlgebraicReal& theta = an.root[best];
    unsigned longest = 0;
    for (std::size_t s : succ[c])
      if (an.root[an.theta_of[s]] == theta) longest = std::max(longest, an.chain[s]);
    an.chain[c] = longest + (an.root[c] == theta ? 1 : 0);
  }
  return an;
}

GrowthOrder order_of(const Analysis& an, Letter a) {
  std::size_t c = an.comps.of[a];
  unsigned chain = an.chain[c];
  return GrowthOrder{chain == 0 ? 0 : chain - 1, an.root[an.theta_of[c]]};
}

}  // namespace

GrowthOrder growth_order(const Morphism& phi, Letter a) {
  if (!growing_letters(phi).at(a)) throw Error("growth order of a bounded letter");
  return order_of(analyse(phi), a);
}

std::vector<GrowthOrder> growth_orders(const Morphism& phi) {
  Analysis an = analyse(phi);
  std::vector<GrowthOrder> out;
  for (Letter a = 0; a < phi.source_size(); ++a) out.push_back(order_of(an, a));
  return out;
}

SameOrder all_same_order(const Morphism& phi) {
  auto orders = growth_orders(phi);
  for (const auto& o : orders)
    if (!(o == orders.front())) return SameOrder{false, std::nullopt};
  return SameOrder{true, orders.front()};
}

namespace {

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Row-form matrix N[a][b] = occurrences of b in phi(a).
Matrix occurrences(const Morphism& phi) {
  Matrix m = incidence_matrix(phi);
  Matrix t(m.size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) t[i][j] = m[j][i];
  return t;
}

// Near-Perron vector of n, rationalized and scaled to minimum 1.
std::vector<Rational> perron_guess(const Matrix& n) {
  const std::size_t k = n.size();
  std::vector<double> x(k, 1.0);
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> y(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      y[i] = x[i];
      for (std::size_t j = 0; j < k; ++j) y[i] += n[i][j].convert_to<double>() * x[j];
    }
    double m = *std::max_element(y.begin(), y.end());
    for (auto& v : y) v /= m;
    x = y;
  }
  double lo = *std::min_element(x.begin(), x.end());
  std::vector<Rational> v;
  const long long scale = 1000000000LL;
  for (double e : x) v.push_back(Rational(std::max<long long>(scale, std::llround(e / lo * scale)), scale));
  return v;
}

bool dominates(const Matrix& n, const std::vector<Rational>& v, const Rational& theta_hi) {
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (v[i] < 1) return false;
    Rational s = 0;
    for (std::size_t j = 0; j < n.size(); ++j) s += n[i][j] * v[j];
    if (s > theta_hi * v[i]) return false;
  }
  return true;
}

std::optional<std::vector<Rational>> upper_certificate(const Matrix& n, const Rational& theta_hi) {
  const std::size_t k = n.size();
  if (auto guess = perron_guess(n); dominates(n, guess, theta_hi)) return guess;
  Matrix a(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = (i == j ? 1 : 0) - n[i][j] / theta_hi;
  auto v = solve(a, std::vector<Rational>(k, Rational(1)));
  if (!v) return std::nullopt;
  for (std::size_t i = 0; i < k; ++i) {
    if ((*v)[i] < 1) return std::nullopt;
    Rational s = 0;
    for (std::size_t j = 0; j < k; ++j) s += n[i][j] * (*v)[j];
    if (s > theta_hi * (*v)[i]) return std::nullopt;
  }
  return v;
}

std::optional<std::vector<Rational>> lower_certificate(const Matrix& ns, const Rational& theta_lo) {
  const std::size_t k = ns.size();
  // Power iteration on I + N_S (aperiodic even when N_S is periodic).
  std::vector<double> x(k, 1.0);
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> y(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      y[i] = x[i];
      for (std::size_t j = 0; j < k; ++j) y[i] += ns[i][j].convert_to<double>() * x[j];
    }
    double m = *std::max_element(y.begin(), y.end());
    for (auto& v : y) v /= m;
    x = y;
  }
  std::vector<Rational> w;
  const long long scale = 1000000000LL;
  for (double v : x) w.push_back(Rational(std::max<long long>(1, std::llround(v * scale)), scale));
  for (std::size_t i = 0; i < k; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < k; ++j) s += ns[i][j] * w[j];
    if (s < theta_lo * w[i]) return std::nullopt;
  }
  return w;
}

std::size_t min_image_length(const Morphism& m) {
  std::size_t l = m.images().front().size();
  for (const Word& w : m.images()) l = std::min(l, w.size());
  return l;
}

}  // namespace

GrowthBounds growth_bounds(const Morphism& phi, const Morphism& psi, const Rational& width) {
  if (!psi.non_erasing()) throw Error("growth bounds need a non-erasing morphism");
  Analysis an = analyse(phi);
  GrowthOrder common = order_of(an, 0);
  for (Letter a = 0; a < phi.source_size(); ++a) {
    GrowthOrder o = order_of(an, a);
    if (!(o == common) || o.d != 0) throw Error("growth bounds need one common order (0, θ)");
  }
  AlgebraicReal theta = common.theta;
  if (!(AlgebraicReal::rational(1) < theta)) throw Error("growth bounds need θ > 1");
  const Matrix n = occurrences(phi);

  std::vector<std::size_t> top;
  for (std::size_t c = 0; c < an.comps.members.size(); ++c)
    if (an.root[c] == theta) top.push_back(c);

  Rational w = width;
  for (int attempt = 0; attempt < 12; ++attempt, w /= 16) {
    theta.refine(w);
    GrowthBounds b;
    b.theta_hi = theta.poly().sign_at(theta.hi()) == 0 ? theta.hi() + w : theta.hi();
    b.theta_lo = theta.lo();
    auto up = upper_certificate(n, b.theta_hi);
    if (!up) continue;
    b.upper = *up;
    // One vector for the whole matrix: N w >= θ_lo w with w > 0 gives
    // |phi^k(a)| >= θ_lo^k w_a / max w directly.
    if (auto whole = lower_certificate(n, b.theta_lo)) {
      Rational lo = *std::min_element(whole->begin(), whole->end());
      Rational hi = *std::max_element(whole->begin(), whole->end());
      b.lower = {*whole};
      b.C1 = Rational(static_cast<long long>(min_image_length(psi))) * lo / hi;
      b.C2 = Rational(static_cast<long long>(psi.max_image_length())) *
             *std::max_element(b.upper.begin(), b.upper.end());
      return b;
    }
    Rational ratio = 1;
    bool ok = true;
    for (std::size_t c : top) {
      auto cert = lower_certificate(restricted(phi, an.comps.members[c]), b.theta_lo);
      if (!cert) {
        ok = false;
        break;
      }
      Rational lo = *std::min_element(cert->begin(), cert->end());
      Rational hi = *std::max_element(cert->begin(), cert->end());
      ratio = std::min(ratio, Rational(lo / hi));
      b.lower.push_back(*cert);
    }
    if (!ok) continue;
    b.C1 = ratio * pow(b.theta_lo, -static_cast<int>(phi.source_size()));
    b.C2 = Rational(static_cast<long long>(psi.max_image_length())) *
           *std::max_element(b.upper.begin(), b.upper.end());
    return b;
  }
  throw Error("growth bounds: certificate construction failed");
}

std::vector<BigInt> image_lengths(const Morphism& phi, const Morphism& psi, int k) {
  std::vector<BigInt> len;
  for (const auto& w : psi.images()) len.push_back(BigInt(w.size()));
  for (int i = 0; i < k; ++i) {
    std::vector<BigInt> next(len.size());
    for (Letter a = 0; a < len.size(); ++a)
      for (Letter b : phi(a)) next[a] += len[b];
    len = std::move(next);
  }
  return len;
}

bool check_bounds(const Morphism& phi, const Morphism& psi, const GrowthBounds& b, int kmax) {
  std::vector<BigInt> len;
  for (const auto& w : psi.images()) len.push_back(BigInt(w.size()));
  Rational lo = b.C1, hi = b.C2;
  for (int k = 0; k <= kmax; ++k) {
    for (const BigInt& l : len)
      if (Rational(l) < lo || Rational(l) > hi) return false;
    std::vector<BigInt> next(len.size());
    for (Letter a = 0; a < len.size(); ++a)
      for (Letter c : phi(a)) next[a] += len[c];
    len = std::move(next);
    lo *= b.theta_lo;
    hi *= b.theta_hi;
  }
  return true;
}

}  // namespace urec
