#pragma once

// Small independent helpers for tests: naive string-level substitution,
// used as oracles against the library.

#include <map>
#include <random>
#include <set>
#include <string>

#include "urec/bounded.hpp"
#include "urec/rulefile.hpp"
#include "urec/words.hpp"

namespace testing {

using StrMap = std::map<char, std::string>;

inline std::string iterate(const StrMap& m, std::string w, int k) {
  for (int i = 0; i < k; ++i) {
    std::string next;
    for (char c : w) next += m.at(c);
    w = next;
  }
  return w;
}

// Naive prefix of m^∞(start) coded by `code`, by iterating until long enough.
inline std::string naive_prefix(const StrMap& m, const StrMap& code, char start, std::size_t n) {
  std::string w(1, start);
  for (int guard = 0; guard < 64; ++guard) {
    std::string coded;
    for (char c : w) coded += code.count(c) ? code.at(c) : std::string(1, c);
    if (coded.size() >= n) return coded.substr(0, n);
    w = iterate(m, w, 1);
  }
  return {};
}

inline std::set<std::string> windows(const std::string& s, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.insert(s.substr(i, n));
  return out;
}

inline urec::Word word(const urec::Alphabet& al, const std::string& s) {
  urec::Word w;
  for (char c : s) w.push_back(*al.find(std::string(1, c)));
  return w;
}

inline std::string str(const urec::Alphabet& al, urec::WordView w) {
  std::string s;
  for (auto a : w) s += al.token(a);
  return s;
}

inline std::set<std::string> strs(const urec::Alphabet& al, const std::set<urec::Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(str(al, w));
  return out;
}

inline urec::MorphicSystem sys(const std::string& text) { return urec::parse_rules(text); }

inline const char* TM = "alphabet a b\nstart a\nrule a -> a b\nrule b -> b a\n";
inline const char* FIB = "alphabet a b\nstart a\nrule a -> a b\nrule b -> a\n";
inline const char* PER = "alphabet a b\nstart a\nrule a -> a b a\nrule b -> b\n";
inline const char* TAIL = "alphabet a b\nstart a\nrule a -> a b\nrule b -> b\n";
inline const char* RUNS = "alphabet a b\nstart a\nrule a -> a a b\nrule b -> b\n";
inline const char* PREFIX = "alphabet c a b\nstart c\nrule c -> c a\nrule a -> a b\nrule b -> b a\n";
inline const char* TM_TAIL =
    "alphabet c a b\ntarget a b\nstart c\nrule c -> c b\nrule a -> a b\nrule b -> b a\n"
    "code c -> a\ncode a -> a\ncode b -> b\n";
inline const char* SPARSE = "alphabet c a b\nstart c\nrule c -> c a b c\nrule a -> a b\nrule b -> b a\n";

using urec::Alphabet;
using urec::Letter;
using urec::LetterClass;
using urec::MorphicSystem;
using urec::Morphism;
using urec::Word;

// |phi^k(a)| for k <= kmax, saturating.
inline std::vector<std::vector<std::uint64_t>> lengths(const Morphism& phi, int kmax) {
  const std::size_t n = phi.source_size();
  std::vector<std::vector<std::uint64_t>> len(kmax + 1, std::vector<std::uint64_t>(n, 1));
  const std::uint64_t cap = std::uint64_t(1) << 60;
  for (int k = 1; k <= kmax; ++k)
    for (Letter a = 0; a < n; ++a) {
      std::uint64_t s = 0;
      for (Letter b : phi(a)) s = std::min(cap, s + len[k - 1][b]);
      len[k][a] = s;
    }
  return len;
}

inline urec::Morphism random_substitution(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> len(1, 3);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(n - 1));
  std::vector<Word> images(n);
  for (Letter a = 0; a < n; ++a) {
    std::size_t l = len(rng);
    if (a == 0) images[a].push_back(0), l = std::max<std::size_t>(l, 2) - 1;
    for (std::size_t i = 0; i < l; ++i) images[a].push_back(letter(rng));
  }
  return Morphism(n, n, images);
}

inline urec::MorphicSystem system_of(const urec::Morphism& phi) {
  std::vector<std::string> toks;
  for (std::size_t i = 0; i < phi.source_size(); ++i) toks.push_back(std::string(1, char('a' + i)));
  Alphabet al(toks);
  return MorphicSystem{al, al, 0, phi, Morphism::identity(al.size())};
}

// Maximal bounded blocks strictly between growing letters, closed under subwords.
inline std::set<urec::Word> scanned_blocks(const urec::Word& pre, const urec::LetterClass& cls) {
  std::set<Word> out{Word{}};
  std::size_t last = std::string::npos;
  for (std::size_t i = 0; i < pre.size(); ++i) {
    if (!cls.is_growing(pre[i])) continue;
    if (last != std::string::npos)
      for (std::size_t x = last + 1; x < i; ++x)
        for (std::size_t y = x + 1; y <= i; ++y) out.emplace(pre.begin() + x, pre.begin() + y);
    last = i;
  }
  return out;
}

}  // namespace testing
