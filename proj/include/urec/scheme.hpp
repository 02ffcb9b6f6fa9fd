#pragma once

// Rauzy schemes: strongly connected graphs with a front and a back word on
// every edge, where each vertex is distributing (in 1, out > 1) or
// collecting (in > 1, out 1).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urec/words.hpp"

namespace urec {

using Path = std::vector<std::size_t>;  // edge ids

struct SchemeEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word front;
  Word back;
};

/// Topology only; edge i carries the number i + 1.
struct Lightened {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  auto operator<=>(const Lightened&) const = default;
  std::string str() const;
};

class Scheme {
 public:
  Scheme() = default;
  Scheme(std::size_t vertices, std::vector<SchemeEdge> edges);

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const SchemeEdge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<SchemeEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& in(std::size_t v) const { return in_.at(v); }

  bool distributing(std::size_t v) const { return in_[v].size() == 1 && out_[v].size() > 1; }
  bool collecting(std::size_t v) const { return in_[v].size() > 1 && out_[v].size() == 1; }
  bool supporting(std::size_t e) const {
    return collecting(edges_[e].from) && distributing(edges_[e].to);
  }
  std::vector<std::size_t> supporting_edges() const;
  /// Least word length over supporting edges.
  std::size_t scale() const;

  bool is_path(const Path& p) const;
  bool is_symmetric(const Path& p) const;
  Word front_word(const Path& p) const;
  Word back_word(const Path& p) const;
  /// Offset of the front word of the symmetric subpath starting at edge j of
  /// p within front_word(p).
  std::size_t offset_of(const Path& p, std::size_t j) const;

  /// Minimal path starting with p and ending in a distributing vertex.
  Path natural_right(const Path& p) const;
  /// Minimal path ending with p and starting in a collecting vertex.
  Path natural_left(const Path& p) const;

  Lightened lightened() const;
  std::string dot(const Alphabet& al) const;

  /// Renumbers edges: the first edge is `root`; then breadth-first over
  /// successor edges taken in the order given by `rank`. Vertices are
  /// numbered by first appearance. Returns the new scheme and old -> new ids.
  std::pair<Scheme, std::vector<std::size_t>> canonical(
      std::size_t root, const std::function<bool(std::size_t, std::size_t)>& rank) const;

 private:
  std::vector<SchemeEdge> edges_;
  std::vector<std::vector<std::size_t>> out_, in_;
};

/// Memoized "is a factor of H" predicate.
using FactorTest = std::function<bool(WordView)>;

/// Symmetric paths with at most `max_edges` edges whose word is a factor,
/// found by depth-first search pruned on non-factor prefixes.
std::vector<Path> admissible_paths(const Scheme& s, const FactorTest& factor, std::size_t max_edges);

/// A T-ruled scheme: topology plus the admissible symmetric paths up to T.
struct TRuled {
  Lightened topology;
  std::vector<Path> admissible;
  std::size_t T = 0;

  bool operator==(const TRuled&) const = default;
};

TRuled t_ruled(const Scheme& s, const FactorTest& factor, std::size_t T);

struct ValidationReport {
  std::vector<int> violated;    // property numbers 1..7
  std::vector<int> unverified;  // witness searches that ran out of budget
  std::vector<std::string> notes;

  bool ok() const { return violated.empty(); }
};

struct ValidationBudget {
  std::size_t path_edges = 6;     // properties 3, 4, 7
  std::size_t factor_length = 0;  // property 6; 0 = longest edge word, at most 128
};

ValidationReport validate_scheme(const Scheme& s, const FactorOracle& H,
                                 const ValidationBudget& budget = {});

}  // namespace urec
