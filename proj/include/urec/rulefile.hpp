#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "urec/words.hpp"

namespace urec {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the rule-file format:
///
///   alphabet a b c
///   target 0 1
///   start a
///   rule a -> a b
///   code a -> 0
///
/// `code` lines are optional; without them psi is the identity onto the
/// source alphabet. The system is returned as written, not normalized.
MorphicSystem parse_rules(std::string_view text);
MorphicSystem load_rules(const std::filesystem::path& path);

/// Inverse of parse_rules.
std::string format_rules(const MorphicSystem& sys);

}  // namespace urec
