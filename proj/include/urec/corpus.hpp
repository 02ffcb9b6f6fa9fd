#pragma once

// Labeled rule files and the pipeline/oracle comparison over a directory.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "urec/oracle.hpp"
#include "urec/pipeline.hpp"

namespace urec {

/// A rule file whose header carries "# expect: UR|notUR" and "# note: ...".
struct CorpusEntry {
  std::string name;  // file stem
  std::filesystem::path file;
  bool expected_ur = false;
  std::string note;
};

/// Throws ParseError when the expect line is missing or malformed.
CorpusEntry read_corpus_entry(const std::filesystem::path& file);

struct CorpusRow {
  std::string name;
  std::optional<CorpusEntry> entry;  // empty on a parse failure
  std::string error;
  Verdict verdict = Verdict::Inconclusive;
  std::string stage;
  std::string reason;
  std::optional<OracleReport> oracle;
  bool agrees = false;              // pipeline verdict equals the label
  bool oracle_consistent = false;   // not-recurrent => NO; labeled UR => R(n)/n bounded
  double seconds = 0;               // pipeline wall time
};

struct CorpusOptions {
  DecideOptions decide;
  std::size_t oracle_prefix = 100000;
  std::size_t oracle_n_max = 10;
};

/// One row per *.rule file, sorted by file name. A broken file yields an
/// error row; the others still run.
std::vector<CorpusRow> run_corpus(const std::filesystem::path& dir, const CorpusOptions& opts = {});

/// R(n)/n over n = 1..|R|.
double max_ratio(const std::vector<std::size_t>& R);

}  // namespace urec
