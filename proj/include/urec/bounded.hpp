#pragma once

// Bounded and growing letters, the graph Q over growing letters, and the
// finiteness test for bounded factors of phi^∞(a1).

#include <string>
#include <variant>
#include <vector>

#include "urec/words.hpp"

namespace urec {

struct LetterClass {
  std::vector<bool> growing;

  bool is_growing(Letter a) const { return growing.at(a); }
  bool bounded(WordView w) const;
  std::size_t growing_count() const;
};

LetterClass classify_letters(const Morphism& phi);

struct QVertex {
  enum Kind { Single, Pair, Tail };
  Kind kind = Single;
  Letter first = 0;
  Letter second = 0;  // Pair only

  auto operator<=>(const QVertex&) const = default;
};

struct QEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word left;   // ω₁
  Word right;  // ω₂

  bool empty_label() const { return left.empty() && right.empty(); }
};

/// The part of Q reachable from the start letter. Vertex 0 is the start.
struct GraphQ {
  std::vector<QVertex> vertices;
  std::vector<QEdge> edges;

  std::string dot(const Alphabet& al) const;
  std::string vertex_name(const Alphabet& al, std::size_t v) const;
};

GraphQ build_graph_q(const MorphicSystem& sys, const LetterClass& cls);

struct FiniteBounded {
  std::set<Word> words;  // subword-closed, contains ε
};
struct InfinitePower {
  Word u;  // nonempty; u^k occurs in phi^∞(a1) for every k
};
using BoundedFactorReport = std::variant<FiniteBounded, InfinitePower>;

BoundedFactorReport bounded_factors(const MorphicSystem& sys, const LetterClass& cls,
                                    const GraphQ& q);

/// Every length-|u| factor of W is a cyclic shift of u, i.e. W is purely
/// periodic with a rotation of u as period. Requires non-erasing morphisms.
bool periodic_with_period(const MorphicSystem& sys, WordView u);

}  // namespace urec
