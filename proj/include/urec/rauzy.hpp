#pragma once

// Schemes from Rauzy graphs and their evolution.

#include <set>

#include "urec/scheme.hpp"

namespace urec {

/// Scheme of the order-n Rauzy graph of H: special factors become vertices
/// (a bispecial factor w becomes a collecting and a distributing vertex
/// joined by a supporting edge) and maximal non-branching paths become
/// edges. Front words are labels of natural right extensions, back words of
/// natural left extensions; the leading (trailing) n letters are dropped when
/// the edge leaves a distributing (enters a collecting) vertex.
Scheme rauzy_scheme(const FactorOracle& H, std::size_t n);

/// Smallest order n >= min_order whose scheme is valid; throws for periodic H.
Scheme initial_scheme(const FactorOracle& H, std::size_t min_order = 2);

/// One elementary evolution of s along supporting edge v.
///
/// In the intermediate graph S' the vertices around v are split: every edge
/// x_i into v gets its own end vertex A_i, every edge y_j out of v its own
/// start vertex B_j, and v is replaced by edges v_ij : A_i -> B_j. Pairs with
/// B(x_i)·F(v)·F(y_j) not a factor are bad and their v_ij are removed; then
/// vertices with one remaining edge in and out are smoothed away.
struct Evolution {
  Scheme next;                 // canonically numbered
  std::size_t v = 0;           // supporting edge of the old scheme
  std::set<std::pair<std::size_t, std::size_t>> bad;  // (x_i, y_j) old edge ids

  // For each new edge: the old edges its S'-path passes through (v_ij read
  // as v) and whether that path starts at some B_j / ends at some A_i.
  std::vector<Path> image;
  std::vector<bool> starts_at_B, ends_at_A;

  // S' data used to lift old paths.
  struct Gadget {
    std::vector<std::size_t> from, to;   // S' edges
    std::vector<std::size_t> origin;     // old edge id (v for v_ij)
    std::vector<bool> good;
    std::vector<std::size_t> old_to_sp;  // old edge -> S' edge (v unused)
    std::vector<std::size_t> x_index, y_index;  // old edge -> i / j or npos
    std::vector<std::vector<std::size_t>> vij;   // S' edge of v_ij
    std::vector<std::size_t> gin, gout;  // good degrees of S' vertices
    std::vector<std::vector<std::size_t>> good_out, good_in;
    std::vector<bool> is_A, is_B;
    std::vector<std::size_t> first_to_new;  // S' edge starting a new edge -> new id
  } gadget;

  /// Old path the new path corresponds to (same front word).
  Path map_path(const Path& p) const;
  /// Minimal symmetric new path whose image contains the symmetric old path
  /// p (p != {v}); nullopt when p uses a bad pair.
  std::optional<Path> lift(const Path& p) const;
};

/// Entry of the evolution protocol: topology of the scheme plus bad pairs
/// given by edge numbers.
struct ProtocolEntry {
  Lightened topology;
  std::set<std::pair<std::size_t, std::size_t>> bad;

  auto operator<=>(const ProtocolEntry&) const = default;
};

/// Evolution along the lowest-numbered supporting edge of s with new edges
/// numbered breadth-first from the image of the first edge.
Evolution evolve(const Scheme& s, const FactorOracle& H);
ProtocolEntry protocol_entry(const Scheme& s, const Evolution& ev);

}  // namespace urec
