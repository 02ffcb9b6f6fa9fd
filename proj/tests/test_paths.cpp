#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support.hpp"
#include "urec/paths.hpp"
#include "urec/rauzy.hpp"

using namespace urec;
using namespace testing;

namespace {

const StrMap tm_map{{'a', "ab"}, {'b', "ba"}};

bool starts_with(const Path& p, const Path& q) {
  return q.size() <= p.size() && std::equal(q.begin(), q.end(), p.begin());
}
bool ends_with(const Path& p, const Path& q) {
  return q.size() <= p.size() && std::equal(q.begin(), q.end(), p.end() - static_cast<std::ptrdiff_t>(q.size()));
}

}  // namespace

TEST_CASE("trimming") {
  auto sy = sys(TM);
  FactorOracle H(sy);
  Scheme s = initial_scheme(H);
  auto fac = [&](WordView w) { return H.contains(w); };
  for (const Path& p : admissible_paths(s, fac, 7)) {
    Word f = s.front_word(p);
    if (auto r = trim_right(s, p)) {
      REQUIRE(s.is_symmetric(*r));
      Word fr = s.front_word(*r);
      CHECK(std::equal(fr.begin(), fr.end(), f.begin()));
      CHECK(f.size() - fr.size() == s.edge(p[r->size()]).front.size());
    }
    if (auto l = trim_left(s, p)) {
      REQUIRE(s.is_symmetric(*l));
      Word fl = s.front_word(*l);
      CHECK(std::equal(fl.rbegin(), fl.rend(), f.rbegin()));
      CHECK(f.size() - fl.size() == s.edge(p[p.size() - l->size() - 1]).back.size());
    }
  }
}

TEST_CASE("locate and glue on Thue-Morse triples") {
  auto sy = sys(TM);
  FactorOracle H(sy);
  Scheme s = initial_scheme(H);
  for (int i = 0; i < 3; ++i) s = evolve(s, H).next;
  const std::size_t M = s.scale();
  std::size_t cmax = 0;
  for (const auto& e : s.edges()) cmax = std::max({cmax, e.front.size(), e.back.size()});
  const std::string text = naive_prefix(tm_map, {}, 'a', 1 << 17);
  auto fac = [&](WordView w) { return text.find(str(sy.target, w)) != std::string::npos; };
  auto W = [&](std::size_t at, std::size_t n) { return word(sy.target, text.substr(at, n)); };
  auto cat = [](Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  std::mt19937 rng(7);
  const std::size_t lo = 12 * M;
  std::uniform_int_distribution<std::size_t> len(lo, 3 * lo), pos(64, text.size() / 2);
  int triples = 0, negative = 0;
  while (triples < 150) {
    std::size_t a = len(rng), b = len(rng), c = len(rng);
    std::size_t i = pos(rng);
    Word B = W(i, b);
    // second occurrence of B, so that ABC may fail to be a factor
    std::size_t j = text.find(text.substr(i, b), pos(rng));
    if (j == std::string::npos || j < a) continue;
    Word A = W(i - a, a), C = W(j + b, c);
    Word AB = cat(A, B), BC = cat(B, C), ABC = cat(AB, C);

    auto lA = locate_all(s, A, fac), lB = locate_all(s, B, fac), lAB = locate_all(s, AB, fac),
         lBC = locate_all(s, BC, fac);
    REQUIRE(lA.size() == 1);
    REQUIRE(lB.size() == 1);
    REQUIRE(lAB.size() == 1);
    REQUIRE(lBC.size() == 1);
    for (auto [u, l] : {std::pair{&A, &lA}, std::pair{&AB, &lAB}}) {
      Word f = s.front_word(l->front());
      CHECK(is_factor_of(*u, f));
      CHECK(f.size() <= u->size() + 2 * cmax);
    }
    CHECK(starts_with(lAB[0], lA[0]));
    CHECK(ends_with(lAB[0], lB[0]));
    CHECK(starts_with(lBC[0], lB[0]));

    Path g = glue(lAB[0], lBC[0], lB[0]);
    bool admissible = fac(s.front_word(g));
    bool direct = fac(ABC);
    CHECK(admissible == direct);
    if (direct) CHECK(locate(s, ABC, fac) == g);
    negative += !direct;
    ++triples;
  }
  MESSAGE("triples " << triples << ", not factors " << negative);
  CHECK(negative > 10);
}

TEST_CASE("glue rejects misaligned paths") {
  CHECK_THROWS_AS(glue({1, 2, 3}, {4, 5}, {3}), Error);
  CHECK(glue({1, 2, 3}, {2, 3, 4}, {2, 3}) == Path{1, 2, 3, 4});
}
