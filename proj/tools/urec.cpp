// urec: command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "urec/bounded.hpp"
#include "urec/contraction.hpp"
#include "urec/corpus.hpp"
#include "urec/growth.hpp"
#include "urec/oracle.hpp"
#include "urec/pipeline.hpp"
#include "urec/primitive.hpp"
#include "urec/rauzy.hpp"
#include "urec/rulefile.hpp"

using nlohmann::json;
using namespace urec;

namespace {

bool as_json = false;

void emit(const json& j, const std::string& text) {
  if (as_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

MorphicSystem prepared(const std::string& file) { return restrict_reachable(normalize(load_rules(file))); }

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return 0;
    case Verdict::No: return 1;
    default: return 2;
  }
}

json decision_json(const PipelineResult& r, const Alphabet& al) {
  json j{{"verdict", to_string(r.verdict)}, {"stage", r.stage}, {"reason", r.reason}};
  if (r.decision) {
    const Decision& d = *r.decision;
    json c = json::object();
    for (const auto& [name, k] : d.constants.c) c[name] = {{"value", k.value}, {"note", k.note}};
    j["decider"] = {{"k0", d.k0},           {"k_final", d.k_final},     {"size0", d.size0},
                    {"steps", d.steps},     {"preperiod", d.preperiod}, {"period", d.period},
                    {"constants", c}};
    if (d.witness)
      j["decider"]["witness"] = {{"source", al.format(d.witness->first)},
                                 {"k", d.witness->second},
                                 {"rechecked", d.witness_rechecked}};
  }
  return j;
}

int cmd_decide(const std::string& file, const std::string& trace, std::size_t max_steps) {
  MorphicSystem sys = load_rules(file);
  DecideOptions opts;
  opts.max_steps = max_steps;
  std::ofstream tf;
  if (!trace.empty()) {
    tf.open(trace);
    if (!tf) throw Error("cannot write " + trace);
    opts.trace = &tf;
  }
  PipelineResult r = decide_ur(sys, opts);
  if (tf.is_open()) tf << "verdict " << to_string(r.verdict) << " stage " << r.stage << "\n";
  std::ostringstream os;
  os << to_string(r.verdict) << " (" << r.stage << ") " << r.reason << "\n";
  if (r.decision)
    os << "k0 " << r.decision->k0 << " size0 " << r.decision->size0 << " steps " << r.decision->steps << "\n";
  emit(decision_json(r, sys.source), os.str());
  return exit_code(r.verdict);
}

int cmd_bounded(const std::string& file, const std::string& dot) {
  MorphicSystem sys = prepared(file);
  LetterClass cls = classify_letters(sys.phi);
  GraphQ q = build_graph_q(sys, cls);
  if (!dot.empty()) {
    std::ofstream(dot) << q.dot(sys.source);
  }
  BoundedFactorReport rep = bounded_factors(sys, cls, q);
  json j;
  std::ostringstream os;
  json letters = json::object();
  for (Letter a = 0; a < sys.source.size(); ++a) {
    letters[sys.source.token(a)] = cls.is_growing(a) ? "growing" : "bounded";
    os << sys.source.token(a) << " " << (cls.is_growing(a) ? "growing" : "bounded") << "\n";
  }
  j["letters"] = letters;
  j["q_vertices"] = q.vertices.size();
  j["q_edges"] = q.edges.size();
  if (auto* inf = std::get_if<InfinitePower>(&rep)) {
    j["result"] = {{"kind", "infinite"}, {"u", sys.source.format(inf->u)}};
    os << "infinite: every power of " << sys.source.format(inf->u) << " occurs\n";
  } else {
    const auto& words = std::get<FiniteBounded>(rep).words;
    json ws = json::array();
    os << "finite: " << words.size() << " bounded factors\n";
    for (const Word& w : words) {
      ws.push_back(sys.source.format(w));
      os << "  '" << sys.source.format(w) << "'\n";
    }
    j["result"] = {{"kind", "finite"}, {"words", ws}};
  }
  emit(j, os.str());
  return 0;
}

int cmd_contract(const std::string& file) {
  MorphicSystem sys = prepared(file);
  LetterClass cls = classify_letters(sys.phi);
  GraphQ q = build_graph_q(sys, cls);
  BoundedFactorReport rep = bounded_factors(sys, cls, q);
  if (std::holds_alternative<InfinitePower>(rep)) throw Error("bounded factors are infinite; nothing to contract");
  Contraction c = contract(sys, cls, std::get<FiniteBounded>(rep));
  json triples = json::array();
  for (const Triple& t : c.triples)
    triples.push_back({sys.source.token(t.t), sys.source.format(t.w), sys.source.token(t.t2)});
  std::string rules = format_rules(c.system);
  emit(json{{"triples", triples}, {"rules", rules}}, rules);
  return 0;
}

int cmd_growth(const std::string& file) {
  MorphicSystem sys = prepared(file);
  auto orders = growth_orders(sys.phi);
  json letters = json::object();
  std::ostringstream os;
  for (Letter a = 0; a < sys.source.size(); ++a) {
    letters[sys.source.token(a)] = {{"d", orders[a].d}, {"theta", orders[a].theta.str()},
                                    {"theta_approx", orders[a].theta.approx()}};
    os << sys.source.token(a) << " " << orders[a].str() << "\n";
  }
  bool same = all_same_order(sys.phi).same;
  json j{{"letters", letters}, {"same_order", same}};
  os << "same order: " << (same ? "yes" : "no") << "\n";
  if (same) {
    GrowthBounds b = growth_bounds(sys.phi, sys.psi);
    bool ok = check_bounds(sys.phi, sys.psi, b, 30);
    j["theta_lo"] = to_string(b.theta_lo);
    j["theta_hi"] = to_string(b.theta_hi);
    j["C1"] = to_string(b.C1);
    j["C2"] = to_string(b.C2);
    j["checked_k30"] = ok;
    os << "theta in [" << to_string(b.theta_lo) << ", " << to_string(b.theta_hi) << "]\n"
       << "C1 " << to_string(b.C1) << " C2 " << to_string(b.C2) << (ok ? " (checked for k <= 30)" : " (FAILED k <= 30)")
       << "\n";
  }
  emit(j, os.str());
  return 0;
}

int cmd_core(const std::string& file) {
  MorphicSystem sys = prepared(file);
  PrimitiveCore core = extract_core(sys);
  PeriodicityVerdict pv = is_periodic_primitive(core.H);
  json D = json::array();
  for (Letter a : core.D) D.push_back(sys.source.token(a));
  std::string rules = format_rules(core.H);
  json j{{"D", D}, {"n", core.n}, {"l", core.l}, {"d0", sys.source.token(core.d0)}, {"rules", rules},
         {"checked_up_to", pv.checked_up_to}};
  std::ostringstream os;
  os << "rho = phi^" << core.n << ", rho2 = rho^" << core.l << ", start " << sys.source.token(core.d0) << "\n"
     << rules;
  if (pv.period) {
    j["period"] = core.H.target.format(*pv.period);
    os << "periodic with period " << core.H.target.format(*pv.period) << "\n";
  } else {
    j["period"] = nullptr;
    os << "aperiodic (complexity checked up to " << pv.checked_up_to << ")\n";
  }
  emit(j, os.str());
  return 0;
}

int cmd_rauzy(const std::string& file, std::size_t steps, const std::string& dot_dir, std::size_t T,
              bool validate) {
  MorphicSystem sys = prepared(file);
  PrimitiveCore core = extract_core(sys);
  FactorOracle H(core.H);
  if (!dot_dir.empty()) std::filesystem::create_directories(dot_dir);
  Scheme s = initial_scheme(H);
  json rows = json::array();
  std::ostringstream os;
  for (std::size_t i = 0;; ++i) {
    json row{{"step", i}, {"edges", s.edge_count()}, {"scale", s.scale()}};
    os << "S" << i << " edges " << s.edge_count() << " scale " << s.scale();
    if (validate) {
      ValidationReport v = validate_scheme(s, H);
      row["violated"] = v.violated;
      row["unverified"] = v.unverified;
      os << (v.ok() ? " valid" : " INVALID");
    }
    if (T > 0) {
      TRuled tr = t_ruled(s, [&](WordView w) { return H.contains(w); }, T);
      row["admissible"] = tr.admissible.size();
      os << " admissible<=" << T << " " << tr.admissible.size();
    }
    if (!dot_dir.empty()) std::ofstream(std::filesystem::path(dot_dir) / ("S" + std::to_string(i) + ".dot")) << s.dot(core.H.target);
    if (i == steps) {
      rows.push_back(row);
      os << "\n";
      break;
    }
    Evolution ev = evolve(s, H);
    ProtocolEntry pe = protocol_entry(s, ev);
    json bad = json::array();
    for (auto [x, y] : pe.bad) bad.push_back({x, y});
    row["topology"] = pe.topology.str();
    row["bad"] = bad;
    os << " | " << pe.topology.str() << " bad " << bad.dump() << "\n";
    rows.push_back(row);
    s = ev.next;
  }
  emit(json{{"schemes", rows}}, os.str());
  return 0;
}

int cmd_factors(const std::string& file, std::size_t n) {
  MorphicSystem sys = prepared(file);
  auto fs = factors(sys, n);
  json arr = json::array();
  std::ostringstream os;
  for (const Word& w : fs) {
    arr.push_back(sys.target.format(w));
    os << sys.target.format(w) << "\n";
  }
  emit(json{{"n", n}, {"count", fs.size()}, {"factors", arr}}, os.str());
  return 0;
}

json oracle_json(const OracleReport& r, const Alphabet& al) {
  json j{{"prefix_len", r.prefix_len}, {"R", r.R}, {"R_long", r.R_long}, {"verdict", to_string(r.verdict)},
         {"note", r.note}, {"max_ratio", max_ratio(r.R)}};
  j["witness"] = r.witness ? json(al.format(*r.witness)) : json(nullptr);
  return j;
}

int cmd_oracle(const std::string& file, std::size_t prefix_len, std::size_t n_max) {
  MorphicSystem sys = prepared(file);
  OracleReport r = oracle(sys, prefix_len, n_max);
  std::ostringstream os;
  os << to_string(r.verdict);
  if (!r.note.empty()) os << " (" << r.note << ")";
  os << "\n";
  for (std::size_t n = 1; n <= r.R.size(); ++n)
    os << "R(" << n << ") = " << r.R[n - 1] << " / " << r.R_long[n - 1] << "\n";
  emit(oracle_json(r, sys.target), os.str());
  return 0;
}

int cmd_corpus(const std::string& dir, bool timings) {
  auto rows = run_corpus(dir);
  json arr = json::array();
  std::ostringstream os;
  bool all = true;
  for (const CorpusRow& r : rows) {
    json j{{"name", r.name}, {"error", r.error}, {"verdict", to_string(r.verdict)}, {"stage", r.stage},
           {"reason", r.reason}, {"agrees", r.agrees}, {"oracle_consistent", r.oracle_consistent}};
    j["expected"] = r.entry ? json(r.entry->expected_ur ? "UR" : "notUR") : json(nullptr);
    j["note"] = r.entry ? json(r.entry->note) : json(nullptr);
    j["oracle"] = r.oracle ? json(to_string(r.oracle->verdict)) : json(nullptr);
    if (timings) j["seconds"] = r.seconds;
    arr.push_back(j);
    all = all && r.error.empty() && r.agrees && r.oracle_consistent;
    os << std::left << std::setw(10) << r.name;
    if (!r.error.empty() && !r.entry) {
      os << "error: " << r.error << "\n";
      continue;
    }
    os << std::setw(6) << (r.entry->expected_ur ? "UR" : "notUR") << std::setw(14) << to_string(r.verdict)
       << std::setw(26) << (r.oracle ? to_string(r.oracle->verdict) : "-") << (r.agrees ? "agree" : "DISAGREE")
       << (r.oracle_consistent ? "" : " oracle-conflict");
    if (timings) os << "  " << fixed(r.seconds, 3) << "s";
    if (!r.error.empty()) os << "  error: " << r.error;
    os << "\n";
  }
  emit(json{{"entries", arr}}, os.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform recurrence of morphic words"};
  app.require_subcommand(1);
  app.fallthrough();
  bool seedless = false;
  app.add_flag("--seedless", seedless, "deterministic run (nothing here is randomized)");
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, trace, dot, dir;
  std::size_t max_steps = DecideOptions{}.max_steps, steps = 10, T = 0, n = 3, prefix_len = 100000, n_max = 10;
  bool validate = false, timings = false;

  auto* decide = app.add_subcommand("decide", "decide uniform recurrence; exit 0 = UR, 1 = not UR, 2 = inconclusive");
  decide->add_option("rulefile", file)->required()->check(CLI::ExistingFile);
  decide->add_option("--trace", trace, "write the decision trace here");
  decide->add_option("--max-steps", max_steps, "decision loop step budget");

  auto* bounded = app.add_subcommand("bounded", "bounded letters and bounded factors");
  bounded->add_option("rulefile", file)->required()->check(CLI::ExistingFile);
  bounded->add_option("--dot", dot, "write graph Q in dot format");

  auto* contract = app.add_subcommand("contract", "contract bounded blocks into growing letters");
  contract->add_option("rulefile", file)->required()->check(CLI::ExistingFile);

  auto* growth = app.add_subcommand("growth", "growth orders and growth bounds");
  growth->add_option("rulefile", file)->required()->check(CLI::ExistingFile);

  auto* core = app.add_subcommand("core", "primitive core and periodicity");
  core->add_option("rulefile", file)->required()->check(CLI::ExistingFile);

  auto* rauzy = app.add_subcommand("rauzy", "Rauzy scheme of the primitive core and its evolution");
  rauzy->add_option("rulefile", file)->required()->check(CLI::ExistingFile);
  rauzy->add_option("--steps", steps, "evolution steps");
  rauzy->add_option("--dot", dot, "directory for one dot file per scheme");
  rauzy->add_option("--T", T, "count admissible symmetric paths with at most T edges");
  rauzy->add_flag("--validate", validate, "check the scheme properties at every step");

  auto* fact = app.add_subcommand("factors", "factors of the word of a given length");
  fact->add_option("rulefile", file)->required()->check(CLI::ExistingFile);
  fact->add_option("n", n, "factor length");

  auto* orc = app.add_subcommand("oracle", "empirical recurrence function on a long prefix");
  orc->add_option("rulefile", file)->required()->check(CLI::ExistingFile);
  orc->add_option("--prefix", prefix_len, "prefix length");
  orc->add_option("--nmax", n_max, "longest factor length");

  auto* corpus = app.add_subcommand("corpus", "run the pipeline and the oracle over a directory of rule files");
  corpus->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  corpus->add_flag("--timings", timings, "include wall times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*decide) return cmd_decide(file, trace, max_steps);
    if (*bounded) return cmd_bounded(file, dot);
    if (*contract) return cmd_contract(file);
    if (*growth) return cmd_growth(file);
    if (*core) return cmd_core(file);
    if (*rauzy) return cmd_rauzy(file, steps, dot, T, validate);
    if (*fact) return cmd_factors(file, n);
    if (*orc) return cmd_oracle(file, prefix_len, n_max);
    if (*corpus) return cmd_corpus(dir, timings);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
