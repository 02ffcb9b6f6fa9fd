#include "urec/rulefile.hpp"

#include <fstream>
#include <sstream>

namespace urec {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

MorphicSystem parse_rules(std::string_view text) {
  std::optional<Alphabet> source, target;
  std::optional<std::pair<std::string, std::size_t>> start;
  struct Pending {
    std::size_t line;
    std::vector<std::string> lhs_rhs;
  };
  std::vector<Pending> rules, codes;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split(line);
    if (toks.empty()) continue;
    const std::string kw = toks[0];
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    try {
      if (kw == "alphabet") {
        if (source) throw ParseError(lineno, "duplicate alphabet declaration");
        if (rest.empty()) throw ParseError(lineno, "empty alphabet");
        source.emplace(rest);
      } else if (kw == "target") {
        if (target) throw ParseError(lineno, "duplicate target declaration");
        if (rest.empty()) throw ParseError(lineno, "empty target alphabet");
        target.emplace(rest);
      } else if (kw == "start") {
        if (start) throw ParseError(lineno, "duplicate start declaration");
        if (rest.size() != 1) throw ParseError(lineno, "start expects one letter");
        start.emplace(rest[0], lineno);
      } else if (kw == "rule" || kw == "code") {
        if (rest.size() < 2 || rest[1] != "->")
          throw ParseError(lineno, "expected '" + kw + " <letter> -> <word>'");
        (kw == "rule" ? rules : codes).push_back({lineno, rest});
      } else {
        throw ParseError(lineno, "unknown keyword '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
    if (end == text.size()) break;
  }

  if (!source) throw ParseError(lineno, "missing alphabet declaration");
  if (!start) throw ParseError(lineno, "missing start declaration");
  auto a1 = source->find(start->first);
  if (!a1) throw ParseError(start->second, "undeclared start letter '" + start->first + "'");

  auto read_map = [](const std::vector<Pending>& lines, const Alphabet& from,
                     const Alphabet& to, const char* what) {
    std::vector<std::optional<Word>> images(from.size());
    for (const auto& p : lines) {
      auto lhs = from.find(p.lhs_rhs[0]);
      if (!lhs) throw ParseError(p.line, "undeclared symbol '" + p.lhs_rhs[0] + "'");
      if (images[*lhs])
        throw ParseError(p.line, std::string("duplicate ") + what + " for '" + p.lhs_rhs[0] + "'");
      Word w;
      for (std::size_t i = 2; i < p.lhs_rhs.size(); ++i) {
        const std::string& t = p.lhs_rhs[i];
        if (t == "ε" || t == "_") continue;
        auto b = to.find(t);
        if (!b) throw ParseError(p.line, "undeclared symbol '" + t + "'");
        w.push_back(*b);
      }
      images[*lhs] = std::move(w);
    }
    return images;
  };

  auto phi_opt = read_map(rules, *source, *source, "rule");
  std::vector<Word> phi;
  for (Letter a = 0; a < source->size(); ++a) {
    if (!phi_opt[a]) throw ParseError(lineno, "no rule for letter '" + source->token(a) + "'");
    phi.push_back(*phi_opt[a]);
  }

  Alphabet tgt = target ? *target : *source;
  std::vector<Word> psi;
  if (codes.empty()) {
    if (target && !(*target == *source))
      throw ParseError(lineno, "target alphabet declared without code lines");
    for (Letter a = 0; a < source->size(); ++a) psi.push_back({a});
  } else {
    auto psi_opt = read_map(codes, *source, tgt, "code");
    for (Letter a = 0; a < source->size(); ++a) {
      if (!psi_opt[a]) throw ParseError(lineno, "no code for letter '" + source->token(a) + "'");
      psi.push_back(*psi_opt[a]);
    }
  }
  const std::size_t n = source->size();
  return MorphicSystem{*source, tgt, *a1, Morphism(n, n, std::move(phi)),
                       Morphism(n, tgt.size(), std::move(psi))};
}

MorphicSystem load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str());
}

std::string format_rules(const MorphicSystem& sys) {
  std::ostringstream out;
  auto word = [](const Alphabet& al, const Word& w) {
    if (w.empty()) return std::string("ε");
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + al.token(w[i]);
    return s;
  };
  auto list = [](const Alphabet& al) {
    std::string s;
    for (const auto& t : al.tokens()) s += " " + t;
    return s;
  };
  out << "alphabet" << list(sys.source) << "\n";
  const bool identity = sys.target == sys.source && sys.psi == Morphism::identity(sys.source.size());
  if (!identity) out << "target" << list(sys.target) << "\n";
  out << "start " << sys.source.token(sys.start) << "\n";
  for (Letter a = 0; a < sys.source.size(); ++a)
    out << "rule " << sys.source.token(a) << " -> " << word(sys.source, sys.phi(a)) << "\n";
  if (!identity)
    for (Letter a = 0; a < sys.source.size(); ++a)
      out << "code " << sys.source.token(a) << " -> " << word(sys.target, sys.psi(a)) << "\n";
  return out.str();
}

}  // namespace urec
