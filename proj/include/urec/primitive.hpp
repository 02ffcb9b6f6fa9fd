#pragma once

// The primitive core H = psi(rho2^∞(d0)) of a system whose letters all grow
// at the same rate, its periodicity test, and the decision instance.

#include <optional>
#include <set>

#include "urec/growth.hpp"
#include "urec/words.hpp"

namespace urec {

/// Letters on a cycle of the letter digraph.
std::set<Letter> recurrent_letters(const Morphism& phi);

struct PrimitiveCore {
  std::vector<Letter> D;  // letters of the input system, sorted
  unsigned n = 1;         // rho = phi^n
  unsigned l = 1;         // rho2 = rho^l
  Letter d0 = 0;          // in the input system's numbering
  /// Over the alphabet D (same tokens), phi = rho2|D, psi = psi|D, start d0.
  MorphicSystem H;
};

PrimitiveCore extract_core(const MorphicSystem& sys);

/// |D| · max|rho2(a)| · ⌈θ_hi⌉².
std::size_t default_complexity_bound(const MorphicSystem& H);

struct PeriodicityVerdict {
  std::optional<Word> period;  // shortest period when periodic
  std::size_t checked_up_to = 0;
  std::vector<std::size_t> complexity;  // p(1), p(2), ...
};

/// Morse-Hedlund test on the primitive word H: periodic iff p(n) <= n for
/// some n <= n_max.
PeriodicityVerdict is_periodic_primitive(const MorphicSystem& H,
                                         std::optional<std::size_t> n_max = std::nullopt);

/// Decide whether h(g^k(a)) is a factor of psi(phi^∞(c1)) for all k and a.
struct NosInstance {
  MorphicSystem g;     // g, h and the start letter of W
  MorphicSystem core;  // phi primitive, psi, c1
  GrowthBounds bounds;  // for |h(g^k(a))|
};

NosInstance make_nos_instance(const MorphicSystem& sys, const PrimitiveCore& core);

}  // namespace urec
