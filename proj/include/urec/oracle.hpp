#pragma once

// Brute-force empirical recurrence checks on long prefixes.

#include <optional>
#include <string>
#include <vector>

#include "urec/words.hpp"

namespace urec {

/// Gap statistics of the length-n factors of a finite text.
struct GapStats {
  std::size_t max_gap = 0;          // over consecutive occurrences of one factor
  std::size_t first_occurrence = 0;  // largest first position of a factor
  std::vector<std::size_t> last;    // last position of each factor, by sorted factor
  std::vector<Word> factors;        // sorted
};
GapStats gap_stats(WordView text, std::size_t n);

/// Least ratio (distance between two occurrences of u) / |u| over factors of
/// length 1..n_max.
double separation(WordView text, std::size_t n_max);

struct OracleReport {
  enum class Verdict { ConsistentWithUR, NotRecurrent, UnboundedGapSuspected };
  std::size_t prefix_len = 0;
  std::vector<std::size_t> R;       // R[n-1], on the prefix
  std::vector<std::size_t> R_long;  // on the doubled prefix
  Verdict verdict = Verdict::ConsistentWithUR;
  std::optional<Word> witness;      // factor that stops occurring
  std::string note;
};
std::string to_string(OracleReport::Verdict v);

/// Scans prefixes of length L, 2L and 4L. A factor whose last occurrence is
/// the same in all three is reported as not recurrent; a recurrence function
/// that changes between L and 2L is reported as unbounded gaps.
OracleReport oracle(const MorphicSystem& sys, std::size_t prefix_len = 100000, std::size_t n_max = 10);

}  // namespace urec
