#include "urec/pipeline.hpp"

#include <ostream>

#include "urec/bounded.hpp"
#include "urec/contraction.hpp"

namespace urec {

namespace {

PipelineResult answer(Verdict v, std::string stage, std::string reason) {
  PipelineResult r;
  r.verdict = v;
  r.stage = std::move(stage);
  r.reason = std::move(reason);
  return r;
}

}  // namespace

PipelineResult decide_ur(const MorphicSystem& input, const DecideOptions& opts) {
  try {
    MorphicSystem sys = restrict_reachable(normalize(input));
    LetterClass cls = classify_letters(sys.phi);
    if (cls.growing_count() < sys.source.size()) {
      GraphQ q = build_graph_q(sys, cls);
      BoundedFactorReport rep = bounded_factors(sys, cls, q);
      if (auto* inf = std::get_if<InfinitePower>(&rep)) {
        Word u = image(sys.psi, inf->u);
        bool per = periodic_with_period(sys, u);
        return answer(per ? Verdict::Yes : Verdict::No, "bounded",
                      "arbitrarily long powers of " + sys.target.format(u) +
                          (per ? "; the word is purely periodic" : "; the word is not purely periodic"));
      }
      Contraction c = contract(sys, cls, std::get<FiniteBounded>(rep));
      sys = restrict_reachable(c.system);
    }
    SameOrder same = all_same_order(sys.phi);
    if (!same.same)
      return answer(Verdict::No, "growth", "letters of the contracted system grow at different rates");
    PrimitiveCore core = extract_core(sys);
    PeriodicityVerdict pv = is_periodic_primitive(core.H);
    if (pv.period) {
      bool per = periodic_with_period(sys, *pv.period);
      return answer(per ? Verdict::Yes : Verdict::No, "core",
                    "the primitive core is periodic with period " + core.H.target.format(*pv.period) +
                        (per ? "; so is the word" : "; the word is not"));
    }
    NosInstance nos = make_nos_instance(sys, core);
    Decision d = decide(nos, opts);
    PipelineResult r = answer(d.verdict, "decider", d.reason);
    r.source_letters = sys.source.size();
    r.decision = std::move(d);
    return r;
  } catch (const Error& e) {
    return answer(Verdict::Inconclusive, "error", e.what());
  }
}

}  // namespace urec
