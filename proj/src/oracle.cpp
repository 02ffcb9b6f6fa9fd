#include "urec/oracle.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace urec {

namespace {

// Text as bytes, so that factors can be hashed as string views.
std::string bytes(WordView text) {
  std::string s;
  s.reserve(text.size() * 4);
  for (Letter a : text)
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((a >> (8 * i)) & 0xff));
  return s;
}

}  // namespace

GapStats gap_stats(WordView text, std::size_t n) {
  GapStats g;
  if (n == 0 || n > text.size()) return g;
  const std::string b = bytes(text);
  const std::string_view all(b);
  struct Info {
    std::size_t first, last;
  };
  std::unordered_map<std::string_view, Info> seen;
  for (std::size_t i = 0; i + n <= text.size(); ++i) {
    auto key = all.substr(4 * i, 4 * n);
    auto [it, fresh] = seen.try_emplace(key, Info{i, i});
    if (!fresh) {
      g.max_gap = std::max(g.max_gap, i - it->second.last);
      it->second.last = i;
    }
  }
  std::map<Word, Info> sorted;
  for (const auto& [k, info] : seen) {
    Word w(text.begin() + static_cast<std::ptrdiff_t>(info.first),
           text.begin() + static_cast<std::ptrdiff_t>(info.first + n));
    sorted.emplace(std::move(w), info);
    g.first_occurrence = std::max(g.first_occurrence, info.first);
  }
  for (auto& [w, info] : sorted) {
    g.factors.push_back(w);
    g.last.push_back(info.last);
  }
  return g;
}

double separation(WordView text, std::size_t n_max) {
  const std::string b = bytes(text);
  const std::string_view all(b);
  double best = 1e300;
  for (std::size_t n = 1; n <= n_max && n <= text.size(); ++n) {
    std::unordered_map<std::string_view, std::size_t> last;
    std::size_t gap = text.size();
    for (std::size_t i = 0; i + n <= text.size(); ++i) {
      auto [it, fresh] = last.try_emplace(all.substr(4 * i, 4 * n), i);
      if (!fresh) {
        gap = std::min(gap, i - it->second);
        it->second = i;
      }
    }
    best = std::min(best, static_cast<double>(gap) / static_cast<double>(n));
  }
  return best;
}

std::string to_string(OracleReport::Verdict v) {
  switch (v) {
    case OracleReport::Verdict::ConsistentWithUR: return "consistent-with-UR";
    case OracleReport::Verdict::NotRecurrent: return "not-recurrent";
    case OracleReport::Verdict::UnboundedGapSuspected: return "unbounded-gap-suspected";
  }
  return "?";
}

OracleReport oracle(const MorphicSystem& sys, std::size_t prefix_len, std::size_t n_max) {
  if (prefix_len < 10 * n_max) throw Error("oracle prefix must be at least 10 n_max");
  if (prefix_len > (std::size_t{1} << 26)) throw Error("oracle prefix exceeds the resource cap");
  OracleReport r;
  r.prefix_len = prefix_len;
  const Word text = prefix(sys, 4 * prefix_len);
  if (text.size() < 4 * prefix_len) {
    r.verdict = OracleReport::Verdict::NotRecurrent;
    r.note = "the word is finite";
    return r;
  }
  const WordView full(text);
  for (std::size_t n = 1; n <= n_max; ++n) {
    GapStats s1 = gap_stats(full.first(prefix_len), n);
    GapStats s2 = gap_stats(full.first(2 * prefix_len), n);
    GapStats s4 = gap_stats(full, n);
    r.R.push_back(s1.max_gap);
    r.R_long.push_back(s2.max_gap);
    if (r.verdict == OracleReport::Verdict::NotRecurrent) continue;
    for (std::size_t i = 0; i < s1.factors.size(); ++i) {
      auto j = std::lower_bound(s2.factors.begin(), s2.factors.end(), s1.factors[i]) - s2.factors.begin();
      auto k = std::lower_bound(s4.factors.begin(), s4.factors.end(), s1.factors[i]) - s4.factors.begin();
      if (s1.last[i] == s2.last[static_cast<std::size_t>(j)] && s1.last[i] == s4.last[static_cast<std::size_t>(k)] &&
          s1.last[i] < prefix_len / 2) {
        r.verdict = OracleReport::Verdict::NotRecurrent;
        r.witness = s1.factors[i];
        r.note = "last occurrence at " + std::to_string(s1.last[i]) + " in a prefix of " +
                 std::to_string(4 * prefix_len);
        break;
      }
    }
  }
  if (r.verdict == OracleReport::Verdict::ConsistentWithUR && r.R != r.R_long) {
    r.verdict = OracleReport::Verdict::UnboundedGapSuspected;
    for (std::size_t n = 0; n < r.R.size(); ++n)
      if (r.R[n] != r.R_long[n]) {
        r.note = "R(" + std::to_string(n + 1) + ") grows from " + std::to_string(r.R[n]) + " to " +
                 std::to_string(r.R_long[n]) + " when the prefix doubles";
        break;
      }
  }
  return r;
}

}  // namespace urec
