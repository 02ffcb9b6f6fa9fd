#pragma once

// Operations on symmetric paths of a scheme.

#include <optional>
#include <vector>

#include "urec/scheme.hpp"

namespace urec {

/// s without its last front generator and what follows it.
std::optional<Path> trim_right(const Scheme& s, const Path& p);
/// s without its first back generator and what precedes it.
std::optional<Path> trim_left(const Scheme& s, const Path& p);
/// trim_left(trim_right(p)).
std::optional<Path> cut(const Scheme& s, const Path& p);

/// All minimal admissible symmetric paths whose front word contains A.
std::vector<Path> locate_all(const Scheme& s, WordView A, const FactorTest& factor);
/// The minimal path l(S, A); the shortest, then lexicographically least, when
/// there are several. nullopt when A is not covered.
std::optional<Path> locate(const Scheme& s, WordView A, const FactorTest& factor);

/// Path starting with ab and ending with bc, overlapping along b.
/// Throws when b is not a suffix of ab and a prefix of bc.
Path glue(const Path& ab, const Path& bc, const Path& b);

}  // namespace urec
