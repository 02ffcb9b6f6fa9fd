#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "support.hpp"
#include "urec/decider.hpp"
#include "urec/pipeline.hpp"

using namespace urec;
using namespace testing;

namespace {

// String-level copy of a system: letter i becomes char 'A' + i.
struct Naive {
  StrMap phi, psi;
  char start;
};

char ch(Letter a) { return static_cast<char>('A' + a); }

std::string chars(WordView w) {
  std::string s;
  for (Letter a : w) s += ch(a);
  return s;
}

Naive naive(const MorphicSystem& sys) {
  Naive n;
  for (Letter a = 0; a < sys.source.size(); ++a) {
    n.phi[ch(a)] = chars(sys.phi(a));
    n.psi[ch(a)] = chars(sys.psi(a));
  }
  n.start = ch(sys.start);
  return n;
}

std::string naive_word(const Naive& n, std::size_t len) { return naive_prefix(n.phi, n.psi, n.start, len); }

std::string naive_working(const Naive& g, const std::string& q, unsigned k) {
  std::string w = iterate(g.phi, q, static_cast<int>(k));
  std::string out;
  for (char c : w) out += g.psi.at(c);
  return out;
}

NosInstance instance(const char* rules) {
  MorphicSystem sys = restrict_reachable(normalize(parse_rules(rules)));
  return make_nos_instance(sys, extract_core(sys));
}

struct StepLine {
  std::string kind;
  double size;
};

// "step i scheme s rep r k k size x kind" lines of a trace.
std::vector<StepLine> step_lines(const std::string& trace) {
  std::vector<StepLine> out;
  std::istringstream in(trace);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("step ", 0) != 0) continue;
    std::istringstream ls(line);
    std::string tok;
    StepLine s{};
    while (ls >> tok) {
      if (tok == "size") ls >> s.size;
      else s.kind = tok;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("sources and working words") {
  NosInstance nos = instance(TM_TAIL);
  Naive g = naive(nos.g);
  std::string gw = naive_prefix(g.phi, {}, g.start, 4096);
  // sources are the length-1 and length-2 factors of g^∞
  std::set<std::string> expect = windows(gw, 1);
  for (const auto& w : windows(gw, 2)) expect.insert(w);
  std::set<std::string> got;
  for (const Word& q : sources(nos.g)) got.insert(chars(q));
  CHECK(got == expect);
  for (const Word& q : sources(nos.g))
    for (unsigned k = 0; k <= 6; ++k) CHECK(chars(working_word(nos.g, q, k)) == naive_working(g, chars(q), k));
}

TEST_CASE("NO witnesses are non-factors") {
  NosInstance nos = instance(PREFIX);
  Decision d = decide(nos);
  REQUIRE(d.verdict == Verdict::No);
  REQUIRE(d.witness);
  CHECK(d.witness_rechecked);
  REQUIRE(nos.g.target == nos.core.target);
  Naive g = naive(nos.g);
  std::string w = naive_working(g, chars(d.witness->first), d.witness->second);
  // the core word is linearly recurrent, so a long prefix holds every short factor
  std::string H = naive_word(naive(nos.core), 1 << 16);
  REQUIRE(w.size() * 16 < H.size());
  CHECK(H.find(w) == std::string::npos);
  CHECK_FALSE(occurs(nos.core, working_word(nos.g, d.witness->first, d.witness->second)));
}

TEST_CASE("YES systems: working words up to order 8 are factors") {
  for (const char* rules : {TM, FIB, TM_TAIL}) {
    CAPTURE(rules);
    NosInstance nos = instance(rules);
    CHECK(decide(nos).verdict == Verdict::Yes);
    Naive g = naive(nos.g);
    std::string H = naive_word(naive(nos.core), 1 << 18);
    for (const Word& q : sources(nos.g))
      for (unsigned k = 0; k <= 8; ++k) {
        std::string w = naive_working(g, chars(q), k);
        REQUIRE(w.size() * 64 < H.size());
        CHECK(H.find(w) != std::string::npos);
      }
  }
}

TEST_CASE("transitions are functions of the antirig") {
  NosInstance nos = instance(TM);
  Decision d = decide(nos);
  REQUIRE(d.verdict == Verdict::Yes);
  Decider dc(nos);
  auto r = dc.antirig(d.k0);
  REQUIRE(std::holds_alternative<Antirig>(r));
  const Antirig a = std::get<Antirig>(r);
  CHECK(a.size() == d.size0);
  Antirig e1 = dc.step_evol(a), e2 = dc.step_evol(a);
  CHECK(e1.rep == e2.rep);
  CHECK(e1.k == e2.k);
  CHECK(e1.main == e2.main);
  CHECK(e1.rep == dc.protocol().next(a.rep));
  auto k1 = dc.step_k(a), k2 = dc.step_k(a);
  REQUIRE(std::holds_alternative<Antirig>(k1));
  REQUIRE(std::holds_alternative<Antirig>(k2));
  CHECK(std::get<Antirig>(k1).main == std::get<Antirig>(k2).main);
  CHECK(std::get<Antirig>(k1).k == a.k + 1);
  // a fresh decider gives the same successor
  Decider dc2(nos);
  CHECK(dc2.step_evol(a).main == e1.main);
}

TEST_CASE("size stays between C6 C7 and X") {
  for (const char* rules : {TM, FIB, TM_TAIL}) {
    CAPTURE(rules);
    std::ostringstream trace;
    DecideOptions opts;
    opts.trace = &trace;
    Decision d = decide(instance(rules), opts);
    REQUIRE(d.verdict == Verdict::Yes);
    const double lo = d.constants["C6"] * d.constants["C7"], hi = d.constants["X"];
    auto steps = step_lines(trace.str());
    REQUIRE(!steps.empty());
    for (const StepLine& s : steps) {
      CHECK(s.size >= lo);
      CHECK(s.size <= hi);
    }
    CHECK(steps.front().size == static_cast<double>(d.size0));
  }
}

TEST_CASE("pipeline verdicts") {
  CHECK(decide_ur(parse_rules(FIB)).verdict == Verdict::Yes);
  CHECK(decide_ur(parse_rules(TM_TAIL)).verdict == Verdict::Yes);
  PipelineResult p = decide_ur(parse_rules(PREFIX));
  CHECK(p.verdict == Verdict::No);
  CHECK(p.stage == "decider");
  CHECK(decide_ur(parse_rules(PER)).stage == "core");
  CHECK(decide_ur(parse_rules(TAIL)).stage == "bounded");
  CHECK(decide_ur(parse_rules(SPARSE)).stage == "growth");
  // not prolongable
  CHECK(decide_ur(parse_rules("alphabet a b\nstart a\nrule a -> b a\nrule b -> a\n")).verdict == Verdict::Inconclusive);
}
