#include "urec/words.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "urec/letter_graph.hpp"

namespace urec {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw Error("alphabet must be nonempty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw Error("empty letter token");
    auto [it, fresh] = index_.emplace(tokens_[i], static_cast<Letter>(i));
    if (!fresh) throw Error("duplicate letter '" + tokens_[i] + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::single_char_tokens() const {
  return std::all_of(tokens_.begin(), tokens_.end(),
                     [](const std::string& t) { return t.size() == 1; });
}

std::string Alphabet::format(WordView w) const {
  if (w.empty()) return "ε";
  const bool compact = single_char_tokens();
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += token(w[i]);
  }
  return out;
}

Morphism::Morphism(std::size_t source_size, std::size_t target_size,
                   std::vector<Word> images)
    : target_size_(target_size), images_(std::move(images)) {
  if (images_.size() != source_size)
    throw Error("morphism must define an image for every source letter");
  for (const auto& img : images_)
    for (Letter b : img)
      if (b >= target_size_) throw Error("morphism image outside target alphabet");
}

Morphism Morphism::identity(std::size_t n) {
  std::vector<Word> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = {static_cast<Letter>(i)};
  return Morphism(n, n, std::move(images));
}

bool Morphism::non_erasing() const {
  return std::none_of(images_.begin(), images_.end(),
                      [](const Word& w) { return w.empty(); });
}

bool Morphism::is_coding() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const Word& w) { return w.size() == 1; });
}

std::size_t Morphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& w : images_) m = std::max(m, w.size());
  return m;
}

Word image(const Morphism& m, WordView w) {
  Word out;
  for (Letter a : w) {
    if (a >= m.source_size()) throw Error("symbol outside the morphism's source alphabet");
    const Word& img = m(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (inner.target_size() != outer.source_size())
    throw Error("cannot compose morphisms: alphabet mismatch");
  std::vector<Word> images;
  images.reserve(inner.source_size());
  for (const auto& w : inner.images()) images.push_back(image(outer, w));
  return Morphism(inner.source_size(), outer.target_size(), std::move(images));
}

Morphism power(const Morphism& m, unsigned k) {
  if (m.source_size() != m.target_size()) throw Error("power of a non-substitution");
  Morphism r = Morphism::identity(m.source_size());
  for (unsigned i = 0; i < k; ++i) r = compose(m, r);
  return r;
}

std::set<Letter> mortal_letters(const Morphism& m) {
  std::set<Letter> mortal;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Letter a = 0; a < m.source_size(); ++a) {
      if (mortal.count(a)) continue;
      const Word& img = m(a);
      if (std::all_of(img.begin(), img.end(), [&](Letter b) { return mortal.count(b) > 0; })) {
        mortal.insert(a);
        changed = true;
      }
    }
  }
  return mortal;
}

std::set<Letter> reachable_letters(const Morphism& m, Letter from) {
  std::set<Letter> seen{from};
  std::vector<Letter> stack{from};
  while (!stack.empty()) {
    Letter a = stack.back();
    stack.pop_back();
    for (Letter b : m(a))
      if (seen.insert(b).second) stack.push_back(b);
  }
  return seen;
}

void require_prolongable(const MorphicSystem& sys) {
  if (sys.start >= sys.source.size()) throw Error("start letter outside alphabet");
  const Word& img = sys.phi(sys.start);
  if (img.empty() || img.front() != sys.start)
    throw Error("substitution is not prolongable: image of the start letter must begin with it");
  auto mortal = mortal_letters(sys.phi);
  bool live = std::any_of(img.begin() + 1, img.end(),
                          [&](Letter b) { return mortal.count(b) == 0; });
  if (!live) throw Error("substitution is not prolongable: generated word is finite");
}

namespace {

// Emits a1 · v · phi(v) · phi²(v) ... through `out` until `enough` is true.
template <typename Sink, typename Enough>
void expand_fixed_point(const MorphicSystem& sys, Sink&& sink, Enough&& enough) {
  require_prolongable(sys);
  const Word& img = sys.phi(sys.start);
  sink(WordView(&sys.start, 1));
  Word block(img.begin() + 1, img.end());
  std::set<std::vector<bool>> stalled_letter_sets;
  while (!enough()) {
    bool produced = sink(WordView(block));
    if (produced) {
      stalled_letter_sets.clear();
    } else {
      std::vector<bool> letters(sys.source.size(), false);
      for (Letter a : block) letters[a] = true;
      if (!stalled_letter_sets.insert(letters).second)
        throw Error("generated word is finite");
    }
    if (enough()) break;
    block = image(sys.phi, block);
  }
}

}  // namespace

Word prefix(const MorphicSystem& sys, std::size_t n) {
  Word out;
  if (n == 0) return out;
  expand_fixed_point(
      sys,
      [&](WordView block) {
        std::size_t before = out.size();
        for (Letter a : block) {
          const Word& img = sys.psi(a);
          out.insert(out.end(), img.begin(), img.end());
          if (out.size() >= n) break;
        }
        return out.size() > before;
      },
      [&] { return out.size() >= n; });
  out.resize(n);
  return out;
}

Word fixed_point_prefix(const MorphicSystem& sys, std::size_t n) {
  Word out;
  if (n == 0) return out;
  expand_fixed_point(
      sys,
      [&](WordView block) {
        std::size_t take = std::min(block.size(), n - out.size());
        out.insert(out.end(), block.begin(), block.begin() + take);
        return take > 0;
      },
      [&] { return out.size() >= n; });
  return out;
}

namespace {

void add_windows(WordView text, std::size_t n, std::set<Word>& into,
                 std::vector<Word>* fresh = nullptr) {
  if (text.size() < n) return;
  for (std::size_t i = 0; i + n <= text.size(); ++i) {
    Word w(text.begin() + i, text.begin() + i + n);
    if (into.insert(w).second && fresh) fresh->push_back(std::move(w));
  }
}

}  // namespace

std::set<Word> fixed_point_factors(const MorphicSystem& sys, std::size_t n) {
  if (n == 0) return {Word{}};
  if (!sys.phi.non_erasing()) throw Error("factor enumeration requires a non-erasing substitution");
  // A length-n window of phi(x) touches at most n letters of x, so the
  // length-n factor set is closed under "windows of phi(y)"; iterate to a
  // fixpoint starting from the windows of a prefix.
  std::set<Word> found;
  std::vector<Word> frontier;
  add_windows(fixed_point_prefix(sys, n), n, found, &frontier);
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& y : frontier) add_windows(image(sys.phi, y), n, found, &next);
    frontier = std::move(next);
  }
  return found;
}

std::set<Word> factors(const MorphicSystem& sys, std::size_t n) {
  if (n == 0) return {Word{}};
  if (!sys.psi.non_erasing()) throw Error("factor enumeration requires a non-erasing morphism");
  std::set<Word> out;
  for (const Word& y : fixed_point_factors(sys, n)) add_windows(image(sys.psi, y), n, out);
  return out;
}

bool occurs(const MorphicSystem& sys, WordView u) {
  if (u.empty()) return true;
  for (Letter b : u)
    if (b >= sys.target.size()) return false;
  return factors(sys, u.size()).count(Word(u.begin(), u.end())) > 0;
}

bool is_factor_of(WordView u, WordView text) {
  if (u.empty()) return true;
  if (u.size() > text.size()) return false;
  if (u.size() < 8) return std::search(text.begin(), text.end(), u.begin(), u.end()) != text.end();
  auto it = std::search(text.begin(), text.end(),
                        std::boyer_moore_horspool_searcher(u.begin(), u.end()));
  return it != text.end();
}

// ---------------------------------------------------------------------------
// normalization

namespace {

struct Raw {
  std::vector<std::string> tokens;  // source tokens
  Morphism g;
  Morphism f;
  Letter start;
};

// Keeps the letters in `keep`, erasing the others from g-images.
Raw restrict_letters(const Raw& in, const std::vector<bool>& keep) {
  std::vector<Letter> remap(in.tokens.size(), 0);
  std::vector<std::string> tokens;
  for (Letter a = 0; a < in.tokens.size(); ++a)
    if (keep[a]) {
      remap[a] = static_cast<Letter>(tokens.size());
      tokens.push_back(in.tokens[a]);
    }
  std::vector<Word> g_img, f_img;
  for (Letter a = 0; a < in.tokens.size(); ++a) {
    if (!keep[a]) continue;
    Word w;
    for (Letter b : in.g(a))
      if (keep[b]) w.push_back(remap[b]);
    g_img.push_back(std::move(w));
    f_img.push_back(in.f(a));
  }
  Raw out{tokens, Morphism(tokens.size(), tokens.size(), std::move(g_img)),
          Morphism(tokens.size(), in.f.target_size(), std::move(f_img)), remap[in.start]};
  return out;
}

// Drops mortal letters: x = g^t(x) for the fixed point x, and erasing the
// mortal letters of x gives the fixed point of erase∘g.
bool drop_mortal(Raw& r) {
  auto mortal = mortal_letters(r.g);
  if (mortal.empty()) return false;
  if (mortal.count(r.start)) throw Error("generated word is finite");
  Morphism gt = power(r.g, static_cast<unsigned>(r.tokens.size()));
  Raw widened{r.tokens, r.g, compose(r.f, gt), r.start};
  std::vector<bool> keep(r.tokens.size(), true);
  for (Letter m : mortal) keep[m] = false;
  r = restrict_letters(widened, keep);
  return true;
}

// Drops letters whose descendants are all erased by f.
bool drop_dead(Raw& r) {
  const std::size_t n = r.tokens.size();
  std::vector<bool> live(n, false);
  bool changed = true;
  for (Letter a = 0; a < n; ++a) live[a] = !r.f(a).empty();
  while (changed) {
    changed = false;
    for (Letter a = 0; a < n; ++a) {
      if (live[a]) continue;
      for (Letter b : r.g(a))
        if (live[b]) {
          live[a] = true;
          changed = true;
          break;
        }
    }
  }
  if (std::all_of(live.begin(), live.end(), [](bool b) { return b; })) return false;
  if (!live[r.start]) throw Error("generated word is finite");
  r = restrict_letters(r, live);
  return true;
}

}  // namespace

MorphicSystem normalize(const Alphabet& source, const Alphabet& target,
                        const Morphism& f, const Morphism& g, Letter start) {
  if (g.source_size() != source.size() || g.target_size() != source.size() ||
      f.source_size() != source.size() || f.target_size() != target.size())
    throw Error("normalize: morphism/alphabet size mismatch");
  if (start >= source.size()) throw Error("normalize: start letter outside alphabet");
  if (g(start).empty() || g(start).front() != start)
    throw Error("substitution is not prolongable over the start letter");

  // Mortal and dead letters are removed for g^p; some letters only die
  // under a power (a bounded cycle erased on alternate steps). What is left
  // of f may still erase, which f∘g^q usually repairs.
  std::vector<unsigned> powers;
  unsigned lcm = 1;
  for (unsigned p = 1; p <= source.size() + 1; ++p) {
    powers.push_back(p);
    lcm = std::lcm(lcm, p);
  }
  if (lcm <= 720) powers.push_back(lcm);
  std::optional<Raw> reduced;
  for (unsigned p : powers) {
    Raw r{source.tokens(), power(g, p), f, start};
    for (std::size_t guard = 0; guard <= 2 * source.size() + 2; ++guard) {
      bool a = drop_mortal(r);
      bool b = drop_dead(r);
      if (!a && !b) break;
    }
    const std::size_t n = r.tokens.size();
    MorphicSystem probe{Alphabet(r.tokens), target, r.start, r.g, Morphism::identity(n)};
    require_prolongable(probe);
    Morphism gq = Morphism::identity(n);
    for (std::size_t q = 0; q <= 4 * n + 4 && !r.f.non_erasing(); ++q) {
      gq = compose(r.g, gq);
      Morphism cand = compose(r.f, gq);
      if (cand.non_erasing()) r.f = cand;
    }
    if (r.f.non_erasing()) {
      reduced = std::move(r);
      break;
    }
  }
  if (!reduced) throw Error("normalize: erasing morphism not reducible by powers (unsupported)");
  Raw r = std::move(*reduced);
  const std::size_t n = r.tokens.size();

  if (r.f.is_coding())
    return MorphicSystem{Alphabet(r.tokens), target, r.start, r.g, r.f};

  // Split each letter c into |f(c)| letters (c,i) coded by f(c)[i]; the
  // expanded image of g^p(c) is distributed over them, the first taking the
  // longest piece.
  auto expanded_len = [&](const Morphism& gp, Letter c) {
    std::size_t s = 0;
    for (Letter e : gp(c)) s += r.f(e).size();
    return s;
  };
  Morphism gp = Morphism::identity(n);
  std::optional<Morphism> chosen;
  for (std::size_t p = 1; p <= 8 * n + 8; ++p) {
    gp = compose(r.g, gp);
    bool ok = expanded_len(gp, r.start) >= r.f(r.start).size() + 1;
    for (Letter c = 0; c < n && ok; ++c) ok = expanded_len(gp, c) >= r.f(c).size();
    if (ok) {
      chosen = gp;
      break;
    }
  }
  if (!chosen) throw Error("normalize: cannot distribute morphism images into a coding");

  std::vector<Letter> first(n);
  std::vector<std::string> tokens;
  std::vector<Word> coding;
  for (Letter c = 0; c < n; ++c) {
    first[c] = static_cast<Letter>(tokens.size());
    const Word& fc = r.f(c);
    for (std::size_t i = 0; i < fc.size(); ++i) {
      tokens.push_back(fc.size() == 1 ? r.tokens[c] : r.tokens[c] + "#" + std::to_string(i));
      coding.push_back({fc[i]});
    }
  }
  std::vector<Word> images;
  for (Letter c = 0; c < n; ++c) {
    Word t;
    for (Letter e : (*chosen)(c))
      for (std::size_t i = 0; i < r.f(e).size(); ++i) t.push_back(first[e] + static_cast<Letter>(i));
    const std::size_t k = r.f(c).size();
    const std::size_t head = t.size() - k + 1;
    images.emplace_back(t.begin(), t.begin() + head);
    for (std::size_t i = 1; i < k; ++i) images.push_back({t[head + i - 1]});
  }
  const std::size_t m = tokens.size();
  return MorphicSystem{Alphabet(tokens), target, first[r.start],
                       Morphism(m, m, std::move(images)),
                       Morphism(m, target.size(), std::move(coding))};
}

MorphicSystem restrict_reachable(const MorphicSystem& sys) {
  auto keep_set = reachable_letters(sys.phi, sys.start);
  if (keep_set.size() == sys.source.size()) return sys;
  std::vector<Letter> remap(sys.source.size(), 0);
  std::vector<std::string> tokens;
  for (Letter a : keep_set) {
    remap[a] = static_cast<Letter>(tokens.size());
    tokens.push_back(sys.source.token(a));
  }
  std::vector<Word> phi_img, psi_img;
  for (Letter a : keep_set) {
    Word w;
    for (Letter b : sys.phi(a)) w.push_back(remap[b]);
    phi_img.push_back(std::move(w));
    psi_img.push_back(sys.psi(a));
  }
  const std::size_t n = tokens.size();
  return MorphicSystem{Alphabet(tokens), sys.target, remap[sys.start],
                       Morphism(n, n, std::move(phi_img)),
                       Morphism(n, sys.target.size(), std::move(psi_img))};
}

// ---------------------------------------------------------------------------

FactorOracle::FactorOracle(MorphicSystem sys) : sys_(std::move(sys)) {
  if (!sys_.phi.non_erasing() || !sys_.psi.non_erasing())
    throw Error("factor oracle requires non-erasing morphisms");
  auto growing = growing_letters(sys_.phi);
  for (Letter a = 0; a < sys_.source.size(); ++a)
    if (!growing[a]) throw Error("factor oracle requires every letter to be growing");
  for (const Word& w : fixed_point_factors(sys_, 2)) pairs_.emplace_back(w[0], w[1]);
  auto base = std::make_unique<Level>();
  base->image = sys_.psi.images();
  base->min_len = std::numeric_limits<std::size_t>::max();
  for (const auto& w : base->image) base->min_len = std::min(base->min_len, w.size());
  levels_.push_back(std::move(base));
}

const FactorOracle::Level& FactorOracle::level_for(std::size_t length) const {
  std::lock_guard lock(mu_);
  while (levels_.back()->min_len < length) {
    const Level& prev = *levels_.back();
    auto next = std::make_unique<Level>();
    next->image.resize(prev.image.size());
    next->min_len = std::numeric_limits<std::size_t>::max();
    for (Letter c = 0; c < prev.image.size(); ++c) {
      Word& out = next->image[c];
      for (Letter e : sys_.phi(c)) out.insert(out.end(), prev.image[e].begin(), prev.image[e].end());
      next->min_len = std::min(next->min_len, out.size());
    }
    levels_.push_back(std::move(next));
  }
  for (const auto& lv : levels_)
    if (lv->min_len >= length) return *lv;
  return *levels_.back();
}

bool FactorOracle::contains(WordView u) const {
  if (u.empty()) return true;
  for (Letter b : u)
    if (b >= sys_.target.size()) return false;
  const Level& lv = level_for(u.size());
  std::vector<bool> searched(lv.image.size(), false);
  for (auto [a, b] : pairs_) {
    for (Letter c : {a, b}) {
      if (searched[c]) continue;
      searched[c] = true;
      if (is_factor_of(u, lv.image[c])) return true;
    }
    if (u.size() < 2) continue;
    const Word& left = lv.image[a];
    const Word& right = lv.image[b];
    const std::size_t k = u.size() - 1;
    Word window(left.end() - static_cast<std::ptrdiff_t>(std::min(k, left.size())), left.end());
    window.insert(window.end(), right.begin(),
                  right.begin() + static_cast<std::ptrdiff_t>(std::min(k, right.size())));
    if (is_factor_of(u, window)) return true;
  }
  return false;
}

std::set<Word> FactorOracle::factors(std::size_t n) const {
  std::set<Word> out;
  if (n == 0) {
    out.insert(Word{});
    return out;
  }
  const Level& lv = level_for(n);
  for (auto [a, b] : pairs_) {
    Word both = lv.image[a];
    both.insert(both.end(), lv.image[b].begin(), lv.image[b].end());
    add_windows(both, n, out);
  }
  return out;
}

}  // namespace urec
