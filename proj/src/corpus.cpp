#include "urec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>

#include "urec/rulefile.hpp"

namespace urec {

namespace {

// A labeled UR system whose R(n)/n exceeds this on the scanned prefix is
// treated as inconsistent with the oracle.
constexpr double ratio_cap = 10.0;

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

}  // namespace

CorpusEntry read_corpus_entry(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  CorpusEntry e;
  e.name = file.stem().string();
  e.file = file;
  std::optional<bool> expect;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.rfind("# expect:", 0) == 0) {
      std::string v = trim(line.substr(9));
      if (v == "UR") expect = true;
      else if (v == "notUR") expect = false;
      else throw ParseError(n, "expected label must be UR or notUR, got '" + v + "'");
    } else if (line.rfind("# note:", 0) == 0) {
      e.note = trim(line.substr(7));
    }
  }
  if (!expect) throw ParseError(0, "missing '# expect:' line");
  e.expected_ur = *expect;
  return e;
}

double max_ratio(const std::vector<std::size_t>& R) {
  double r = 0;
  for (std::size_t n = 1; n <= R.size(); ++n) r = std::max(r, static_cast<double>(R[n - 1]) / static_cast<double>(n));
  return r;
}

std::vector<CorpusRow> run_corpus(const std::filesystem::path& dir, const CorpusOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".rule") files.push_back(de.path());
  std::sort(files.begin(), files.end());

  std::vector<CorpusRow> rows;
  for (const auto& f : files) {
    CorpusRow row;
    row.name = f.stem().string();
    try {
      row.entry = read_corpus_entry(f);
      MorphicSystem sys = load_rules(f);
      auto t0 = std::chrono::steady_clock::now();
      PipelineResult r = decide_ur(sys, opts.decide);
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.verdict = r.verdict;
      row.stage = r.stage;
      row.reason = r.reason;
      row.agrees = r.verdict == (row.entry->expected_ur ? Verdict::Yes : Verdict::No);
      try {
        MorphicSystem norm = restrict_reachable(normalize(sys));
        row.oracle = oracle(norm, opts.oracle_prefix, opts.oracle_n_max);
        using OV = OracleReport::Verdict;
        if (row.oracle->verdict == OV::NotRecurrent) row.oracle_consistent = r.verdict == Verdict::No;
        else if (r.verdict == Verdict::Yes)
          row.oracle_consistent = row.oracle->verdict == OV::ConsistentWithUR && max_ratio(row.oracle->R) <= ratio_cap;
        else row.oracle_consistent = true;
      } catch (const Error& e) {
        row.error = std::string("oracle: ") + e.what();
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace urec
