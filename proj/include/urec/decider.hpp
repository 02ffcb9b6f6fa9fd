#pragma once

// Decision loop over antirigs: a scheme of H together with the minimal
// covering paths of all working words h(g^k(q)) of order k.

#include <iosfwd>
#include <map>
#include <optional>
#include <variant>
#include <string>
#include <vector>

#include "urec/paths.hpp"
#include "urec/primitive.hpp"
#include "urec/rauzy.hpp"

namespace urec {

enum class Verdict { Yes, No, Inconclusive };
std::string to_string(Verdict v);

struct Constant {
  double value = 0;
  std::string note;
};

/// Named constants of the decision loop with their derivation.
struct ConstantsLedger {
  std::map<std::string, Constant> c;

  double operator[](const std::string& name) const { return c.at(name).value; }
  void set(const std::string& name, double v, std::string note) { c[name] = {v, std::move(note)}; }
  std::string str() const;
};

/// Materialized deterministic evolution up to its first repeated T-ruled state.
struct Protocol {
  std::vector<Scheme> schemes;     // S_0 .. S_{p+π}
  std::vector<Evolution> steps;    // S_i -> S_{i+1}
  std::size_t preperiod = 0, period = 0;
  std::size_t t_check = 0;

  /// Representative of S_i.
  std::size_t reduce(std::size_t i) const {
    return i < preperiod + period ? i : preperiod + (i - preperiod) % period;
  }
  std::size_t next(std::size_t r) const { return r + 1 == preperiod + period ? preperiod : r + 1; }
};

/// Evolves until the pairs (protocol entry, T-ruled scheme) repeat with the
/// same period twice in a row.
Protocol build_protocol(const FactorOracle& H, std::size_t t_check = 5, std::size_t max_steps = 200);

/// g-sources: factors of length 1 and 2 of g^∞(start).
std::vector<Word> sources(const MorphicSystem& g);
Word working_word(const MorphicSystem& g, WordView q, unsigned k);

struct Antirig {
  std::size_t scheme = 0;  // number of evolutions applied
  std::size_t rep = 0;     // representative index in the protocol
  unsigned k = 0;
  std::vector<Path> main;  // per source
  std::size_t size() const;
};

struct DecideOptions {
  std::size_t max_steps = 20000;
  std::size_t t_check = 5;
  std::size_t max_evolutions = 200;
  std::size_t max_word = std::size_t{1} << 25;  // longest working word materialized
  std::ostream* trace = nullptr;
};

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::pair<Word, unsigned>> witness;  // (source, k)
  bool witness_rechecked = false;
  std::string reason;
  ConstantsLedger constants;
  std::size_t steps = 0;
  unsigned k0 = 0, k_final = 0;
  std::size_t size0 = 0;
  std::size_t preperiod = 0, period = 0;
};

class Decider {
 public:
  Decider(NosInstance nos, DecideOptions opts = {});

  Decision run();

  // Exposed for tests.
  const Protocol& protocol() const { return protocol_; }
  const std::vector<Word>& source_words() const { return sources_; }
  const ConstantsLedger& constants() const { return ledger_; }
  bool admissible(std::size_t rep, const Path& p);
  /// Antirig of (S_0, k) from working words; nullopt with the failing source
  /// index when a working word is not a factor of H.
  std::variant<Antirig, std::size_t> antirig(unsigned k);
  /// (S, k) -> (S, k + 1) by splicing main paths; the failing source index on a
  /// non-factor working word.
  std::variant<Antirig, std::size_t> step_k(const Antirig& a);
  /// (S, k) -> (Evol(S), k) by lifting main paths.
  Antirig step_evol(const Antirig& a);

 private:
  void measure_constants();
  void log(const std::string& line);

  NosInstance nos_;
  DecideOptions opts_;
  FactorOracle H_;
  Protocol protocol_;
  std::vector<Word> sources_;
  std::map<Word, std::size_t> source_index_;
  ConstantsLedger ledger_;
};

Decision decide(const NosInstance& nos, const DecideOptions& opts = {});

}  // namespace urec
