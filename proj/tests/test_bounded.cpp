#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "urec/bounded.hpp"

using namespace urec;
using namespace testing;

TEST_CASE("classify_letters examples") {
  CHECK(classify_letters(sys(RUNS).phi).growing == std::vector<bool>{true, false});
  CHECK(classify_letters(sys(TM).phi).growing == std::vector<bool>{true, true});
  auto s = sys("alphabet a b c\nstart a\nrule a -> a b\nrule b -> c\nrule c -> b\n");
  CHECK(classify_letters(s.phi).growing == std::vector<bool>{true, false, false});
}

TEST_CASE("classify_letters matches iterated lengths on random substitutions") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4;
    Morphism phi = random_substitution(rng, n);
    auto len = lengths(phi, 40);
    auto cls = classify_letters(phi);
    for (Letter a = 0; a < n; ++a) {
      bool constant = true;
      for (int k = static_cast<int>(n); k < 40; ++k) constant = constant && len[k][a] == len[40][a];
      CHECK(cls.is_growing(a) == !constant);
    }
  }
}

TEST_CASE("graph Q edges") {
  auto runs = sys(RUNS);
  auto q = build_graph_q(runs, classify_letters(runs.phi));
  auto has = [&](const std::string& from, const std::string& to, const std::string& l,
                 const std::string& r) {
    for (const auto& e : q.edges)
      if (q.vertex_name(runs.source, e.from) == from && q.vertex_name(runs.source, e.to) == to &&
          str(runs.source, e.left) == l && str(runs.source, e.right) == r)
        return true;
    return false;
  };
  CHECK(has("a", "a", "", ""));
  CHECK(has("a", "a,a", "", ""));
  CHECK(has("a", "a,t", "b", ""));

  auto tm = sys(TM);
  auto qt = build_graph_q(tm, classify_letters(tm.phi));
  for (const auto& e : qt.edges) CHECK(e.empty_label());

  auto per = sys(PER);
  auto qp = build_graph_q(per, classify_letters(per.phi));
  bool found = false;
  for (const auto& e : qp.edges)
    found = found || (qp.vertex_name(per.source, e.to) == "a,a" && str(per.source, e.left) == "b");
  CHECK(found);
  CHECK(qp.dot(per.source).find("digraph Q") == 0);
}

TEST_CASE("bounded factors examples") {
  auto runs = sys(RUNS);
  auto cls = classify_letters(runs.phi);
  auto rep = bounded_factors(runs, cls, build_graph_q(runs, cls));
  REQUIRE(std::holds_alternative<InfinitePower>(rep));
  CHECK(str(runs.source, std::get<InfinitePower>(rep).u) == "b");

  auto tm = sys(TM);
  auto ct = classify_letters(tm.phi);
  auto rt = bounded_factors(tm, ct, build_graph_q(tm, ct));
  REQUIRE(std::holds_alternative<FiniteBounded>(rt));
  CHECK(std::get<FiniteBounded>(rt).words == std::set<Word>{Word{}});

  auto per = sys(PER);
  auto cp = classify_letters(per.phi);
  auto rp = bounded_factors(per, cp, build_graph_q(per, cp));
  REQUIRE(std::holds_alternative<FiniteBounded>(rp));
  CHECK(strs(per.source, std::get<FiniteBounded>(rp).words) == std::set<std::string>{"", "b"});
}

TEST_CASE("bounded factors agree with prefix scans on random substitutions") {
  std::mt19937 rng(77);
  int finite = 0, infinite = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Morphism phi = random_substitution(rng, 2 + trial % 3);
    auto s = system_of(phi);
    auto cls = classify_letters(phi);
    if (!cls.is_growing(0)) continue;
    Word pre = fixed_point_prefix(s, 100000);
    auto rep = bounded_factors(s, cls, build_graph_q(s, cls));
    if (auto* fin = std::get_if<FiniteBounded>(&rep)) {
      ++finite;
      CHECK(fin->words == scanned_blocks(pre, cls));
    } else {
      ++infinite;
      const Word& u = std::get<InfinitePower>(rep).u;
      REQUIRE_FALSE(u.empty());
      CHECK(cls.bounded(u));
      Word u8;
      for (int i = 0; i < 8; ++i) u8.insert(u8.end(), u.begin(), u.end());
      // Runs that grow slowly at the right end of phi^k(a) are checked on the
      // last symbols of phi^k(a), which is itself a prefix of the fixed point.
      bool seen = is_factor_of(u8, pre);
      Word tail{s.start};
      for (int k = 0; k < 200 && !seen; ++k) {
        tail = image(phi, tail);
        if (tail.size() > 4000) tail.erase(tail.begin(), tail.end() - 4000);
        seen = is_factor_of(u8, tail);
      }
      CHECK(seen);
    }
  }
  CHECK(finite > 20);
  CHECK(infinite > 5);
}

TEST_CASE("periodic_with_period") {
  auto per = sys(PER);
  CHECK(periodic_with_period(per, word(per.target, "ab")));
  CHECK(periodic_with_period(per, word(per.target, "ba")));
  auto tm = sys(TM);
  CHECK_FALSE(periodic_with_period(tm, word(tm.target, "ab")));
  auto tail = sys(TAIL);
  CHECK_FALSE(periodic_with_period(tail, word(tail.target, "b")));
  // purely periodic implies the prefix is a repetition of a rotation
  Word p = prefix(per, 20);
  for (std::size_t i = 2; i < p.size(); ++i) CHECK(p[i] == p[i - 2]);
}
