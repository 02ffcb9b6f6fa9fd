#include "urec/primitive.hpp"

#include <map>
#include <numeric>

#include "urec/letter_graph.hpp"

namespace urec {

std::set<Letter> recurrent_letters(const Morphism& phi) {
  auto cyclic = cyclic_letters(letter_graph(phi));
  std::set<Letter> out;
  for (Letter a = 0; a < cyclic.size(); ++a)
    if (cyclic[a]) out.insert(a);
  return out;
}

PrimitiveCore extract_core(const MorphicSystem& sys) {
  if (!sys.phi.non_erasing()) throw Error("extract_core: substitution must be non-erasing");
  const auto graph = letter_graph(sys.phi);
  const auto cycles = shortest_cycle(graph);
  PrimitiveCore core;
  for (Letter a : recurrent_letters(sys.phi))
    core.n = std::lcm(core.n, static_cast<unsigned>(cycles[a]));
  Morphism rho = power(sys.phi, core.n);

  // First terminal component of G_rho (in letter order) reachable from a1:
  // rho maps it into itself.
  auto g_rho = letter_graph(rho);
  auto comps = strongly_connected(g_rho);
  auto reach = reachable_letters(rho, sys.start);
  std::optional<std::size_t> chosen;
  for (Letter a : reach) {
    std::size_t c = comps.of[a];
    bool terminal = true;
    for (Letter x : comps.members[c])
      for (Letter y : g_rho[x])
        if (static_cast<std::size_t>(comps.of[y]) != c) terminal = false;
    if (terminal) {
      chosen = c;
      break;
    }
  }
  if (!chosen) throw Error("extract_core: no terminal component reachable");
  core.D = comps.members[*chosen];

  // Iterate the first-letter map until it cycles.
  std::map<Letter, unsigned> seen;
  Letter x = core.D.front();
  unsigned step = 0;
  while (!seen.count(x)) {
    seen.emplace(x, step++);
    x = rho(x).front();
  }
  core.d0 = x;
  core.l = step - seen[x];
  Morphism rho2 = power(rho, core.l);

  std::map<Letter, Letter> local;
  std::vector<std::string> tokens;
  for (Letter a : core.D) {
    local.emplace(a, static_cast<Letter>(tokens.size()));
    tokens.push_back(sys.source.token(a));
  }
  std::vector<Word> phi, psi;
  for (Letter a : core.D) {
    Word w;
    for (Letter b : rho2(a)) w.push_back(local.at(b));
    phi.push_back(std::move(w));
    psi.push_back(sys.psi(a));
  }
  const std::size_t k = core.D.size();
  core.H = MorphicSystem{Alphabet(tokens), sys.target, local.at(core.d0),
                         Morphism(k, k, std::move(phi)), Morphism(k, sys.target.size(), std::move(psi))};
  return core;
}

std::size_t default_complexity_bound(const MorphicSystem& H) {
  auto order = all_same_order(H.phi);
  std::size_t ceil_theta = 2;
  if (order.order) {
    AlgebraicReal t = order.order->theta;
    t.refine(Rational(1, 1000));
    BigInt c = boost::multiprecision::numerator(t.hi()) / boost::multiprecision::denominator(t.hi());
    if (Rational(c) < t.hi()) c += 1;
    ceil_theta = std::max<std::size_t>(2, c.convert_to<std::size_t>());
  }
  return H.source.size() * H.phi.max_image_length() * ceil_theta * ceil_theta;
}

PeriodicityVerdict is_periodic_primitive(const MorphicSystem& H, std::optional<std::size_t> n_max) {
  PeriodicityVerdict v;
  const std::size_t bound = n_max ? *n_max : default_complexity_bound(H);
  for (std::size_t n = 1; n <= bound; ++n) {
    std::size_t p = factors(H, n).size();
    v.complexity.push_back(p);
    v.checked_up_to = n;
    if (p > n) continue;
    // Periodic: the least period is at most n.
    Word pre = prefix(H, 4 * n + 4);
    for (std::size_t q = 1; q <= n; ++q) {
      bool ok = true;
      for (std::size_t i = 0; i + q < pre.size() && ok; ++i) ok = pre[i] == pre[i + q];
      if (!ok) continue;
      Word u(pre.begin(), pre.begin() + q);
      std::set<Word> rot;
      Word r = u;
      for (std::size_t i = 0; i < q; ++i, std::rotate(r.begin(), r.begin() + 1, r.end())) rot.insert(r);
      bool all = true;
      for (const Word& f : factors(H, q)) all = all && rot.count(f);
      if (all) {
        v.period = u;
        return v;
      }
    }
    throw Error("periodicity test: complexity bound met but no period found");
  }
  return v;
}

NosInstance make_nos_instance(const MorphicSystem& sys, const PrimitiveCore& core) {
  return NosInstance{sys, core.H, growth_bounds(sys.phi, sys.psi)};
}

}  // namespace urec
