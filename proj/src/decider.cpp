#include "urec/decider.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include "urec/oracle.hpp"

namespace urec {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string ConstantsLedger::str() const {
  std::ostringstream os;
  for (const auto& [name, k] : c) os << name << " = " << k.value << "  (" << k.note << ")\n";
  return os.str();
}

std::size_t Antirig::size() const {
  std::size_t s = 0;
  for (const Path& p : main) s = std::max(s, p.size());
  return s;
}

Protocol build_protocol(const FactorOracle& H, std::size_t t_check, std::size_t max_steps) {
  auto fac = [&](WordView w) { return H.contains(w); };
  using State = std::pair<ProtocolEntry, std::vector<Path>>;
  std::vector<State> st;
  std::vector<Scheme> schemes{initial_scheme(H)};
  std::vector<Evolution> steps;
  for (std::size_t i = 0; i <= max_steps; ++i) {
    Evolution ev = evolve(schemes[i], H);
    st.emplace_back(protocol_entry(schemes[i], ev), admissible_paths(schemes[i], fac, t_check));
    schemes.push_back(ev.next);
    steps.push_back(std::move(ev));
    // a period counts once the last two periods repeat exactly
    for (std::size_t pi = 1; 2 * pi <= i; ++pi) {
      bool periodic = true;
      for (std::size_t t = i + 1 - pi; t <= i && periodic; ++t) periodic = st[t] == st[t - pi] && st[t - pi] == st[t - 2 * pi];
      if (!periodic) continue;
      std::size_t p = i + 1 - 2 * pi;
      while (p > 0 && st[p - 1] == st[p - 1 + pi]) --p;
      Protocol out;
      out.t_check = t_check;
      out.preperiod = p;
      out.period = pi;
      out.schemes.assign(schemes.begin(), schemes.begin() + static_cast<std::ptrdiff_t>(p + pi + 1));
      out.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(p + pi));
      return out;
    }
  }
  throw Error("no repetition of the evolution protocol within " + std::to_string(max_steps) + " steps");
}

std::vector<Word> sources(const MorphicSystem& g) {
  std::vector<Word> out;
  for (std::size_t n : {1, 2})
    for (const Word& w : fixed_point_factors(g, n)) out.push_back(w);
  return out;
}

Word working_word(const MorphicSystem& g, WordView q, unsigned k) {
  Word w(q.begin(), q.end());
  for (unsigned i = 0; i < k; ++i) w = image(g.phi, w);
  return image(g.psi, w);
}

namespace {

struct Inconclusive : Error {
  using Error::Error;
};

std::size_t max_length(const Morphism& m) {
  std::size_t n = 0;
  for (const Word& w : m.images()) n = std::max(n, w.size());
  return n;
}

}  // namespace

Decider::Decider(NosInstance nos, DecideOptions opts)
    : nos_(std::move(nos)), opts_(opts), H_(nos_.core) {
  protocol_ = build_protocol(H_, opts_.t_check, opts_.max_evolutions);
  sources_ = sources(nos_.g);
  for (std::size_t i = 0; i < sources_.size(); ++i) source_index_[sources_[i]] = i;
  measure_constants();
}

void Decider::log(const std::string& line) {
  if (opts_.trace) *opts_.trace << line << '\n';
}

bool Decider::admissible(std::size_t rep, const Path& p) {
  const Scheme& s = protocol_.schemes.at(rep);
  return s.is_symmetric(p) && H_.contains(s.front_word(p));
}

void Decider::measure_constants() {
  auto& L = ledger_;
  auto fac = [&](WordView w) { return H_.contains(w); };
  const auto& S = protocol_.schemes;
  double cmax = 0, cmin = 1e300, cm = 1;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const double M = static_cast<double>(S[i].scale());
    for (const auto& e : S[i].edges())
      cmax = std::max(cmax, static_cast<double>(std::max(e.front.size(), e.back.size())) / M);
    for (const Path& p : admissible_paths(S[i], fac, protocol_.t_check))
      cmin = std::min(cmin, static_cast<double>(S[i].front_word(p).size()) / (M * static_cast<double>(p.size())));
    if (i > 0) cm = std::max(cm, static_cast<double>(S[i].scale()) / static_cast<double>(S[i - 1].scale()));
  }
  L.set("C_max", cmax, "max edge word length / scale over the protocol cycle");
  L.set("C_min", cmin, "min |F(s)| / (scale |s|) over admissible paths up to the check length");
  L.set("C_m", cm, "max scale ratio of consecutive schemes in the cycle");

  const Word text = prefix(nos_.core, std::size_t{1} << 15);
  const double sep = separation(text, 32);
  L.set("C_sep", sep, "least occurrence distance / |u| on a 2^15 prefix of H, |u| <= 32");
  double P = 0;
  for (std::size_t n = 1; n <= 16; ++n) {
    GapStats g = gap_stats(text, n);
    P = std::max(P, static_cast<double>(g.max_gap + n) / static_cast<double>(n));
  }
  L.set("P", P, "max (R(n) + n) / n on the same prefix, n <= 16");
  const double K = 2 * cmax + 4 * cmax / sep + 1;
  L.set("K", K, "uniqueness threshold: 4 C_max / (K - 2 C_max) < C_sep, plus 1");

  const double tlo = to_double(nos_.bounds.theta_lo), thi = to_double(nos_.bounds.theta_hi);
  const double C1 = to_double(nos_.bounds.C1), C2 = 2 * to_double(nos_.bounds.C2);
  L.set("theta_lo", tlo, "certified lower bracket of the growth rate");
  L.set("theta_hi", thi, "certified upper bracket of the growth rate");
  L.set("C1", C1, "certified: C1 theta_lo^k <= |h(g^k(a))|");
  L.set("C2", C2, "certified per-letter constant doubled for two-letter sources");
  const double C3 = C1 / cmax, C4 = C2 / cmin, C5 = 2 * cmax / cmin;
  L.set("C3", C3, "C1 / C_max");
  L.set("C4", C4, "C2 / C_min");
  L.set("C5", C5, "2 C_max / C_min");
  const double C6 = std::max({C5 + K * C4 / C1, 2 * C5, C5 * C3 / C4}) + 1;
  L.set("C6", C6, "max(C5 + K C4 / C1, 2 C5, C5 C3 / C4) + 1");
  const double C7 = 2 * C4 * cm / C3;
  L.set("C7", C7, "2 C4 C_m / C3");
  const double C8 = std::max(2 * C4 * thi / C3, 2 * C4 / (C3 * tlo));
  L.set("C8", C8, "max(2 C4 theta_hi / C3, 2 C4 / (C3 theta_lo))");
  const double C9 = std::ceil(std::log(4 * C4 / C3) / std::log(tlo));
  L.set("C9", C9, "least integer with C3 theta_lo^C9 / (2 C4) >= 2");
  L.set("log10_Gamma_full", std::log10(2 * C6) + 2 * std::log10(C7) + C9 * std::log10(C8),
        "2 C6 C7^2 C8^C9");
  // Without the C8^C9 factor: an evolution from size >= Gamma keeps size >= C6 C7.
  L.set("Gamma", 2 * C6 * C7 * C7, "operational threshold 2 C6 C7^2");
}

std::variant<Antirig, std::size_t> Decider::antirig(unsigned k) {
  Antirig a;
  a.k = k;
  const Scheme& s = protocol_.schemes[0];
  auto fac = [&](WordView w) { return H_.contains(w); };
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    Word w = working_word(nos_.g, sources_[i], k);
    if (!H_.contains(w)) return i;
    auto l = locate_all(s, w, fac);
    if (l.empty()) throw Inconclusive("working word not covered by the initial scheme");
    a.main.push_back(l.front());
    if (l.size() > 1 && a.main.back().size() >= ledger_["C6"])
      throw Inconclusive("minimal covering path is not unique above the size threshold");
  }
  return a;
}

std::variant<Antirig, std::size_t> Decider::step_k(const Antirig& a) {
  Antirig b = a;
  b.k = a.k + 1;
  const double T = ledger_.c.count("T") ? ledger_["T"] : 1e300;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    Word gq = image(nos_.g.phi, sources_[i]);
    if (gq.size() == 1) {
      b.main[i] = a.main[source_index_.at(gq)];
      continue;
    }
    auto idx = [&](std::size_t from, std::size_t len) {
      return source_index_.at(Word(gq.begin() + static_cast<std::ptrdiff_t>(from),
                                   gq.begin() + static_cast<std::ptrdiff_t>(from + len)));
    };
    Path cur = a.main[idx(0, 2)];
    for (std::size_t t = 2; t < gq.size(); ++t) {
      cur = glue(cur, a.main[idx(t - 1, 2)], a.main[idx(t - 1, 1)]);
      if (static_cast<double>(cur.size()) > T) throw Inconclusive("spliced path longer than T");
      if (!admissible(a.rep, cur)) return i;
    }
    b.main[i] = std::move(cur);
  }
  return b;
}

Antirig Decider::step_evol(const Antirig& a) {
  const Evolution& ev = protocol_.steps.at(a.rep);
  Antirig b = a;
  b.scheme = a.scheme + 1;
  b.rep = protocol_.next(a.rep);
  for (std::size_t i = 0; i < a.main.size(); ++i) {
    auto l = ev.lift(a.main[i]);
    if (!l) throw Inconclusive("main path uses a bad pair");
    b.main[i] = std::move(*l);
  }
  return b;
}

namespace {

std::vector<std::uint16_t> encode(const Antirig& a) {
  std::vector<std::uint16_t> out{static_cast<std::uint16_t>(a.rep)};
  for (const Path& p : a.main) {
    out.push_back(0xffff);
    for (std::size_t e : p) out.push_back(static_cast<std::uint16_t>(e));
  }
  return out;
}

}  // namespace

Decision Decider::run() {
  Decision d;
  d.preperiod = protocol_.preperiod;
  d.period = protocol_.period;
  auto& L = ledger_;
  log("protocol preperiod " + std::to_string(protocol_.preperiod) + " period " + std::to_string(protocol_.period));
  for (std::size_t i = 0; i < protocol_.steps.size(); ++i) {
    std::ostringstream os;
    os << "protocol " << i << ": " << protocol_.schemes[i].lightened().str() << " bad";
    for (auto [x, y] : protocol_.steps[i].bad) os << " (" << x + 1 << ',' << y + 1 << ')';
    log(os.str());
  }
  try {
    const double Gamma = L["Gamma"], C6 = L["C6"], C7 = L["C7"], C8 = L["C8"];
    std::optional<Antirig> cur;
    for (unsigned k = 0;; ++k) {
      std::size_t longest = 0;
      for (const Word& q : sources_) {
        double est = static_cast<double>(working_word(nos_.g, q, 0).size());
        for (unsigned i = 0; i < k; ++i) est *= static_cast<double>(max_length(nos_.g.phi));
        longest = std::max(longest, static_cast<std::size_t>(std::min(est, 1e18)));
      }
      if (k > 0 && longest > opts_.max_word) {
        std::size_t real = 0;
        for (const Word& q : sources_) real = std::max(real, working_word(nos_.g, q, std::min(k, 64u)).size());
        if (real > opts_.max_word) throw Inconclusive("working words exceed the length budget before size Gamma");
      }
      auto r = antirig(k);
      if (auto* bad = std::get_if<std::size_t>(&r)) {
        d.verdict = Verdict::No;
        d.witness = {sources_[*bad], k};
        d.witness_rechecked = true;
        d.reason = "working word of order " + std::to_string(k) + " is not a factor of H";
        d.k0 = d.k_final = k;
        return d;
      }
      Antirig& a = std::get<Antirig>(r);
      log("k " + std::to_string(k) + " size " + std::to_string(a.size()));
      if (static_cast<double>(a.size()) >= Gamma) {
        cur = std::move(a);
        d.k0 = k;
        break;
      }
    }
    d.size0 = cur->size();
    const double X = std::max(L["C7"] * static_cast<double>(d.size0), L["C7"] * C8 * Gamma);
    L.set("X", X, "max(C7 x0, C7 C8 Gamma)");
    L.set("T", 2 * X * static_cast<double>(max_length(nos_.g.phi)), "2 X max |g(a)|");
    for (const auto& [name, k] : L.c) log("constant " + name + " = " + std::to_string(k.value));

    std::map<std::vector<std::uint16_t>, std::size_t> seen;
    for (std::size_t step = 0; step < opts_.max_steps; ++step) {
      d.steps = step;
      d.k_final = cur->k;
      auto [it, fresh] = seen.emplace(encode(*cur), step);
      if (!fresh) {
        d.verdict = Verdict::Yes;
        d.reason = "antirig state " + std::to_string(it->second) + " repeats at step " + std::to_string(step);
        log("repeat " + std::to_string(it->second) + " " + std::to_string(step));
        return d;
      }
      const double x = static_cast<double>(cur->size());
      if (x > X) throw Inconclusive("antirig size above X");
      if (x < C6 * C7) throw Inconclusive("antirig size below C6 C7");
      std::ostringstream os;
      os << "step " << step << " scheme " << cur->scheme << " rep " << cur->rep << " k " << cur->k << " size " << x;
      if (x < Gamma) {
        log(os.str() + " k-step");
        auto r = step_k(*cur);
        if (auto* bad = std::get_if<std::size_t>(&r)) {
          d.verdict = Verdict::No;
          d.witness = {sources_[*bad], cur->k + 1};
          d.reason = "spliced path is not admissible: working word of order " + std::to_string(cur->k + 1) +
                     " is not a factor of H";
          Word w;
          bool fits = true;
          try {
            Word q = sources_[*bad];
            for (unsigned i = 0; i <= cur->k && fits; ++i) {
              q = image(nos_.g.phi, q);
              fits = q.size() <= opts_.max_word;
            }
            if (fits) w = image(nos_.g.psi, q);
          } catch (const std::bad_alloc&) {
            fits = false;
          }
          if (fits) {
            if (H_.contains(w)) throw Inconclusive("splice rejected a working word that is a factor");
            d.witness_rechecked = true;
          }
          d.k_final = cur->k + 1;
          return d;
        }
        cur = std::move(std::get<Antirig>(r));
      } else {
        if (x < C8 * C6) throw Inconclusive("antirig size below C8 C6 before an evolution");
        log(os.str() + " evolution");
        cur = step_evol(*cur);
      }
    }
    d.reason = "step budget exhausted";
  } catch (const Inconclusive& e) {
    d.verdict = Verdict::Inconclusive;
    d.reason = e.what();
  } catch (const Error& e) {
    d.verdict = Verdict::Inconclusive;
    d.reason = std::string("error: ") + e.what();
  }
  d.constants = ledger_;
  return d;
}

Decision decide(const NosInstance& nos, const DecideOptions& opts) {
  Decider dc(nos, opts);
  Decision d = dc.run();
  d.constants = dc.constants();
  return d;
}

}  // namespace urec
