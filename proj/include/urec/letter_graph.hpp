#pragma once

// The letter digraph of a substitution: a -> b whenever b occurs in phi(a).

#include <vector>

#include "urec/words.hpp"

namespace urec {

using Adjacency = std::vector<std::vector<Letter>>;

Adjacency letter_graph(const Morphism& phi);

struct Components {
  std::vector<int> of;                    // component id per vertex
  std::vector<std::vector<Letter>> members;  // sorted, in reverse topological order
};

/// Tarjan's algorithm. Component ids are in reverse topological order: every
/// edge leads to a component with id <= its own.
Components strongly_connected(const Adjacency& g);

/// Letters lying on a cycle.
std::vector<bool> cyclic_letters(const Adjacency& g);

/// |phi^k(a)| unbounded in k.
std::vector<bool> growing_letters(const Morphism& phi);

/// Length of the shortest cycle through each letter, 0 if none.
std::vector<std::size_t> shortest_cycle(const Adjacency& g);

}  // namespace urec
