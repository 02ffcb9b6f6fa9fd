#include "urec/contraction.hpp"

#include <map>
#include <queue>

namespace urec {

namespace {

std::string triple_token(const Alphabet& al, const Triple& x) {
  const char* sep = al.single_char_tokens() ? "" : ".";
  std::string s = "[" + al.token(x.t) + "|";
  for (std::size_t i = 0; i < x.w.size(); ++i) s += (i ? sep : "") + al.token(x.w[i]);
  return s + "|" + al.token(x.t2) + "]";
}

// Bounded letters before the first growing letter of w, and that letter.
std::pair<Word, Letter> lead(const LetterClass& cls, const Word& w) {
  Word out;
  for (Letter a : w) {
    if (cls.is_growing(a)) return {out, a};
    out.push_back(a);
  }
  throw Error("contraction: image of a growing letter has no growing letter");
}

}  // namespace

Contraction contract(const MorphicSystem& sys, const LetterClass& cls,
                     const FiniteBounded& bounded) {
  if (!sys.phi.non_erasing()) throw Error("contraction requires a non-erasing substitution");
  std::size_t longest = 0;
  for (const Word& w : bounded.words) longest = std::max(longest, w.size());

  Word head = fixed_point_prefix(sys, longest + 2);
  std::optional<std::size_t> second;
  for (std::size_t i = 1; i < head.size() && !second; ++i)
    if (cls.is_growing(head[i])) second = i;
  if (!second) throw Error("contraction: fewer than two growing letters in the fixed point");
  Triple start{head[0], Word(head.begin() + 1, head.begin() + *second), head[*second]};

  MorphicSystem plain{sys.source, sys.source, sys.start, sys.phi,
                      Morphism::identity(sys.source.size())};
  std::map<Triple, Letter> index;
  std::vector<Triple> triples;
  std::queue<Letter> todo;
  auto intern = [&](Triple x) {
    auto it = index.find(x);
    if (it != index.end()) return it->second;
    if (!bounded.words.count(x.w)) throw Error("contraction: block outside the bounded factor set");
    Word whole{x.t};
    whole.insert(whole.end(), x.w.begin(), x.w.end());
    whole.push_back(x.t2);
    if (!occurs(plain, whole)) throw Error("contraction: triple does not occur in the fixed point");
    Letter id = static_cast<Letter>(triples.size());
    index.emplace(x, id);
    triples.push_back(std::move(x));
    todo.push(id);
    return id;
  };

  std::vector<Word> images;
  intern(start);
  while (!todo.empty()) {
    Letter id = todo.front();
    todo.pop();
    const Triple x = triples[id];
    Word tw{x.t};
    tw.insert(tw.end(), x.w.begin(), x.w.end());
    Word expanded = image(sys.phi, tw);
    auto [w_next, t_next] = lead(cls, sys.phi(x.t2));

    // phi(tw) = w0 t1 w1 ... tk w'k; w0 belongs to the predecessor triple.
    std::vector<std::pair<Letter, Word>> items;
    for (Letter a : expanded) {
      if (cls.is_growing(a)) items.emplace_back(a, Word{});
      else if (!items.empty()) items.back().second.push_back(a);
    }
    Word img;
    for (std::size_t i = 0; i < items.size(); ++i) {
      Triple y;
      y.t = items[i].first;
      y.w = items[i].second;
      if (i + 1 < items.size()) {
        y.t2 = items[i + 1].first;
      } else {
        y.w.insert(y.w.end(), w_next.begin(), w_next.end());
        y.t2 = t_next;
      }
      img.push_back(intern(std::move(y)));
    }
    if (images.size() <= id) images.resize(id + 1);
    images[id] = std::move(img);
  }
  images.resize(triples.size());

  std::vector<std::string> tokens;
  std::vector<Word> flat;
  for (const Triple& x : triples) {
    tokens.push_back(triple_token(sys.source, x));
    Word tw{x.t};
    tw.insert(tw.end(), x.w.begin(), x.w.end());
    flat.push_back(std::move(tw));
  }
  const std::size_t n = triples.size();
  Contraction out;
  out.triples = triples;
  out.f = Morphism(n, sys.source.size(), std::move(flat));
  out.system = MorphicSystem{Alphabet(tokens), sys.target, 0,
                             Morphism(n, n, std::move(images)), compose(sys.psi, out.f)};
  return out;
}

}  // namespace urec
