#pragma once

// Uniform recurrence of psi(phi^∞(a1)) from a raw system: normalization,
// bounded letters, contraction, growth orders, primitive core, decision loop.

#include <optional>
#include <string>

#include "urec/decider.hpp"

namespace urec {

struct PipelineResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string stage;   // where the answer was found
  std::string reason;
  std::optional<Decision> decision;  // when the decision loop ran
  std::size_t source_letters = 0;    // after normalization and contraction
};

PipelineResult decide_ur(const MorphicSystem& sys, const DecideOptions& opts = {});

}  // namespace urec
