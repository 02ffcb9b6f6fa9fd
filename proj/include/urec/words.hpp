#pragma once

// Alphabets, finite words, morphisms and morphic systems.
//
// Letters are small integer ids; an Alphabet owns the id <-> token mapping.
// Every value here is immutable after construction.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace urec {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(Letter a) const { return tokens_.at(a); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<Letter> find(std::string_view token) const;
  bool contains(Letter a) const { return a < tokens_.size(); }

  /// Renders a word; tokens are concatenated when all of them are single
  /// characters and space-separated otherwise.
  std::string format(WordView w) const;
  bool single_char_tokens() const;

  bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, Letter, std::less<>> index_;
};

class Morphism {
 public:
  Morphism() = default;
  Morphism(std::size_t source_size, std::size_t target_size,
           std::vector<Word> images);

  static Morphism identity(std::size_t n);

  std::size_t source_size() const { return images_.size(); }
  std::size_t target_size() const { return target_size_; }
  const Word& operator()(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }

  bool non_erasing() const;
  bool is_coding() const;
  std::size_t max_image_length() const;

  bool operator==(const Morphism& o) const = default;

 private:
  std::size_t target_size_ = 0;
  std::vector<Word> images_;
};

/// m(w). Not named `apply`: Word is a std::vector, so ADL would drag in
/// std::apply.
Word image(const Morphism& m, WordView w);
/// outer ∘ inner
Morphism compose(const Morphism& outer, const Morphism& inner);
Morphism power(const Morphism& m, unsigned k);

/// Letters a with φ^k(a) = ε for some k.
std::set<Letter> mortal_letters(const Morphism& m);

/// Letters reachable from `from` in the digraph a -> b when b occurs in m(a),
/// including `from` itself.
std::set<Letter> reachable_letters(const Morphism& m, Letter from);

/// W = psi(phi^∞(start)).
struct MorphicSystem {
  Alphabet source;
  Alphabet target;
  Letter start = 0;
  Morphism phi;
  Morphism psi;

  bool normalized() const { return phi.non_erasing() && psi.is_coding(); }
  bool operator==(const MorphicSystem& o) const = default;
};

/// Throws unless phi(start) = start·v with v not mortal.
void require_prolongable(const MorphicSystem& sys);

/// First n symbols of psi(phi^∞(start)).
Word prefix(const MorphicSystem& sys, std::size_t n);
/// First n symbols of phi^∞(start), before applying psi.
Word fixed_point_prefix(const MorphicSystem& sys, std::size_t n);

/// The exact set of length-n factors of W. Requires non-erasing phi and psi.
std::set<Word> factors(const MorphicSystem& sys, std::size_t n);
/// Length-n factors of phi^∞(start) itself.
std::set<Word> fixed_point_factors(const MorphicSystem& sys, std::size_t n);
bool occurs(const MorphicSystem& sys, WordView u);

/// Equivalent system with non-erasing substitution and a coding.
MorphicSystem normalize(const Alphabet& source, const Alphabet& target,
                        const Morphism& f, const Morphism& g, Letter start);
inline MorphicSystem normalize(const MorphicSystem& sys) {
  return normalize(sys.source, sys.target, sys.psi, sys.phi, sys.start);
}

/// Restricts the source alphabet to letters occurring in phi^∞(start).
MorphicSystem restrict_reachable(const MorphicSystem& sys);

bool is_factor_of(WordView u, WordView text);

/// Exact factor oracle for W = psi(phi^∞(start)) when every letter of the
/// source alphabet is phi-growing and psi is non-erasing.
///
/// A factor u with |u| <= min_c |psi(phi^k(c))| lies inside
/// psi(phi^k(ab)) for some length-2 factor ab of phi^∞(start); images of
/// all such ab are expanded lazily per level and cached.
class FactorOracle {
 public:
  explicit FactorOracle(MorphicSystem sys);

  const MorphicSystem& system() const { return sys_; }
  bool contains(WordView u) const;
  /// All length-n factors, sorted.
  std::set<Word> factors(std::size_t n) const;
  const std::vector<std::pair<Letter, Letter>>& two_factors() const {
    return pairs_;
  }

 private:
  struct Level {
    std::vector<Word> image;  // psi(phi^k(c))
    std::size_t min_len = 0;
  };
  const Level& level_for(std::size_t length) const;

  MorphicSystem sys_;
  std::vector<std::pair<Letter, Letter>> pairs_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

}  // namespace urec
