#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "urec/bounded.hpp"
#include "urec/contraction.hpp"
#include "urec/primitive.hpp"

using namespace urec;
using namespace testing;

namespace {

bool primitive(const Morphism& phi) {
  const std::size_t n = phi.source_size();
  Morphism p = phi;
  for (std::size_t m = 1; m <= (n - 1) * (n - 1) + 1; ++m, p = compose(phi, p)) {
    bool all = true;
    for (Letter a = 0; a < n; ++a) {
      std::set<Letter> seen(p(a).begin(), p(a).end());
      all = all && seen.size() == n;
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("recurrent letters") {
  CHECK(recurrent_letters(sys(TM).phi) == std::set<Letter>{0, 1});
  CHECK(recurrent_letters(sys(TM_TAIL).phi) == std::set<Letter>{0, 1, 2});
  auto swap = sys("alphabet a b\nstart a\nrule a -> b\nrule b -> a\n");
  CHECK(recurrent_letters(swap.phi) == std::set<Letter>{0, 1});
  auto chain = sys("alphabet a b c\nstart a\nrule a -> a b\nrule b -> c\nrule c -> c c\n");
  CHECK(recurrent_letters(chain.phi) == std::set<Letter>{0, 2});
}

TEST_CASE("core of Thue-Morse") {
  auto core = extract_core(sys(TM));
  CHECK(core.D == std::vector<Letter>{0, 1});
  CHECK(core.n == 1);
  CHECK(core.l == 1);
  CHECK(core.H == sys(TM));
}

TEST_CASE("core of the Thue-Morse tail system") {
  auto s = sys(TM_TAIL);
  auto core = extract_core(s);
  CHECK(core.D == std::vector<Letter>{1, 2});
  CHECK(core.H.source.tokens() == std::vector<std::string>{"a", "b"});
  CHECK(str(core.H.target, prefix(core.H, 64)) ==
        naive_prefix({{'a', "ab"}, {'b', "ba"}}, {}, 'a', 64));
}

TEST_CASE("core of a contracted periodic system") {
  auto per = sys(PER);
  auto cls = classify_letters(per.phi);
  auto rep = bounded_factors(per, cls, build_graph_q(per, cls));
  auto c = contract(per, cls, std::get<FiniteBounded>(rep));
  auto core = extract_core(c.system);
  CHECK(core.D.size() == 1);
  auto v = is_periodic_primitive(core.H);
  REQUIRE(v.period);
  CHECK(str(core.H.target, *v.period) == "ab");
  CHECK(periodic_with_period(core.H, *v.period));
}

TEST_CASE("aperiodic cores") {
  auto tm = is_periodic_primitive(sys(TM));
  CHECK_FALSE(tm.period);
  std::string pre = naive_prefix({{'a', "ab"}, {'b', "ba"}}, {}, 'a', 1 << 14);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(tm.complexity[n - 1] == windows(pre, n).size());
  CHECK(std::vector<std::size_t>(tm.complexity.begin(), tm.complexity.begin() + 5) ==
        std::vector<std::size_t>{2, 4, 6, 10, 12});
  auto fib = is_periodic_primitive(sys(FIB));
  CHECK_FALSE(fib.period);
  for (std::size_t n = 1; n <= fib.checked_up_to; ++n) CHECK(fib.complexity[n - 1] == n + 1);
}

TEST_CASE("core invariants on corpus systems") {
  for (const char* text : {TM, FIB, TM_TAIL, PREFIX}) {
    auto s = sys(text);
    auto core = extract_core(s);
    CHECK(primitive(core.H.phi));
    CHECK(core.H.phi(core.H.start).front() == core.H.start);
    Word w = prefix(s, 20000);
    for (std::size_t n = 1; n <= 12; ++n)
      for (const Word& f : factors(core.H, n)) CHECK(is_factor_of(f, w));
    auto again = extract_core(s);
    CHECK(again.D == core.D);
    CHECK(again.d0 == core.d0);
    CHECK(again.n == core.n);
    CHECK(again.l == core.l);
  }
}

TEST_CASE("decision instance") {
  auto s = sys(TM_TAIL);
  auto inst = make_nos_instance(s, extract_core(s));
  CHECK(inst.g == s);
  CHECK(inst.core.source.size() == 2);
  CHECK(check_bounds(inst.g.phi, inst.g.psi, inst.bounds, 30));
}
