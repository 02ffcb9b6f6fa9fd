#pragma once

// Contraction to the triple alphabet: letters [t w t'] with t, t' growing and
// w a bounded block, so that every letter of the new substitution grows.

#include "urec/bounded.hpp"
#include "urec/words.hpp"

namespace urec {

struct Triple {
  Letter t = 0;
  Word w;
  Letter t2 = 0;

  auto operator<=>(const Triple&) const = default;
};

struct Contraction {
  std::vector<Triple> triples;  // indexed by letters of system.source
  Morphism f;                   // [t w t'] -> t w
  /// phi' over the triples, coded by psi∘f; generates the same word.
  MorphicSystem system;
};

Contraction contract(const MorphicSystem& sys, const LetterClass& cls, const FiniteBounded& bounded);

}  // namespace urec
