#include "urec/scheme.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>

namespace urec {

std::string Lightened::str() const {
  std::ostringstream os;
  os << vertices << ':';
  for (auto [a, b] : edges) os << ' ' << a << '>' << b;
  return os.str();
}

Scheme::Scheme(std::size_t vertices, std::vector<SchemeEdge> edges)
    : edges_(std::move(edges)), out_(vertices), in_(vertices) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].from >= vertices || edges_[e].to >= vertices)
      throw Error("scheme edge refers to a missing vertex");
    out_[edges_[e].from].push_back(e);
    in_[edges_[e].to].push_back(e);
  }
}

std::vector<std::size_t> Scheme::supporting_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (supporting(e)) out.push_back(e);
  return out;
}

std::size_t Scheme::scale() const {
  std::size_t m = 0;
  for (std::size_t e : supporting_edges()) {
    std::size_t len = edges_[e].front.size();
    if (m == 0 || len < m) m = len;
  }
  return m;
}

bool Scheme::is_path(const Path& p) const {
  if (p.empty()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= edges_.size()) return false;
    if (i > 0 && edges_[p[i - 1]].to != edges_[p[i]].from) return false;
  }
  return true;
}

bool Scheme::is_symmetric(const Path& p) const {
  return is_path(p) && collecting(edges_[p.front()].from) && distributing(edges_[p.back()].to);
}

Word Scheme::front_word(const Path& p) const {
  Word out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const SchemeEdge& e = edges_[p[i]];
    if (i == 0 || distributing(e.from)) out.insert(out.end(), e.front.begin(), e.front.end());
  }
  return out;
}

Word Scheme::back_word(const Path& p) const {
  Word out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const SchemeEdge& e = edges_[p[i]];
    if (i + 1 == p.size() || collecting(e.to)) out.insert(out.end(), e.back.begin(), e.back.end());
  }
  return out;
}

std::size_t Scheme::offset_of(const Path& p, std::size_t j) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < j; ++i)
    if (collecting(edges_[p[i]].to)) off += edges_[p[i]].back.size();
  return off;
}

Path Scheme::natural_right(const Path& p) const {
  Path out = p;
  std::size_t guard = edges_.size() + 1;
  while (!distributing(edges_[out.back()].to)) {
    std::size_t v = edges_[out.back()].to;
    if (out_[v].size() != 1 || guard-- == 0) throw Error("natural extension does not end");
    out.push_back(out_[v].front());
  }
  return out;
}

Path Scheme::natural_left(const Path& p) const {
  Path rev;
  std::size_t guard = edges_.size() + 1;
  std::size_t first = p.front();
  while (!collecting(edges_[first].from)) {
    std::size_t v = edges_[first].from;
    if (in_[v].size() != 1 || guard-- == 0) throw Error("natural extension does not end");
    first = in_[v].front();
    rev.push_back(first);
  }
  Path out(rev.rbegin(), rev.rend());
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

Lightened Scheme::lightened() const {
  Lightened l;
  l.vertices = vertex_count();
  for (const auto& e : edges_) l.edges.emplace_back(e.from, e.to);
  return l;
}

std::string Scheme::dot(const Alphabet& al) const {
  std::ostringstream os;
  os << "digraph scheme {\n";
  for (std::size_t v = 0; v < vertex_count(); ++v)
    os << "  v" << v << " [shape=" << (collecting(v) ? "box" : "circle") << "];\n";
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    os << "  v" << edges_[e].from << " -> v" << edges_[e].to << " [label=\"" << e + 1 << ": "
       << al.format(edges_[e].front) << " / " << al.format(edges_[e].back) << '"';
    if (supporting(e)) os << ", style=bold";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::pair<Scheme, std::vector<std::size_t>> Scheme::canonical(
    std::size_t root, const std::function<bool(std::size_t, std::size_t)>& rank) const {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order, to_new(edges_.size(), none);
  std::deque<std::size_t> queue{root};
  to_new[root] = 0;
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    order.push_back(e);
    std::vector<std::size_t> next = out_[edges_[e].to];
    std::sort(next.begin(), next.end(), rank);
    for (std::size_t f : next)
      if (to_new[f] == none) {
        to_new[f] = order.size() + queue.size();
        queue.push_back(f);
      }
  }
  if (order.size() != edges_.size()) throw Error("scheme is not strongly connected");
  std::vector<std::size_t> vmap(vertex_count(), none);
  std::size_t nv = 0;
  std::vector<SchemeEdge> edges;
  for (std::size_t e : order) {
    SchemeEdge ne = edges_[e];
    for (std::size_t* v : {&ne.from, &ne.to}) {
      if (vmap[*v] == none) vmap[*v] = nv++;
      *v = vmap[*v];
    }
    edges.push_back(std::move(ne));
  }
  return {Scheme(nv, std::move(edges)), to_new};
}

std::vector<Path> admissible_paths(const Scheme& s, const FactorTest& factor, std::size_t max_edges) {
  std::vector<Path> out;
  Path p;
  Word w;
  std::function<void()> dfs = [&] {
    std::size_t last = p.back();
    if (s.distributing(s.edge(last).to)) out.push_back(p);
    if (p.size() == max_edges) return;
    for (std::size_t e : s.out(s.edge(last).to)) {
      std::size_t mark = w.size();
      bool gen = s.distributing(s.edge(e).from);
      if (gen) w.insert(w.end(), s.edge(e).front.begin(), s.edge(e).front.end());
      if (!gen || factor(w)) {
        p.push_back(e);
        dfs();
        p.pop_back();
      }
      w.resize(mark);
    }
  };
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    if (!s.collecting(v)) continue;
    std::size_t e = s.out(v).front();
    w = s.edge(e).front;
    if (!factor(w)) continue;
    p = {e};
    dfs();
  }
  std::sort(out.begin(), out.end());
  return out;
}

TRuled t_ruled(const Scheme& s, const FactorTest& factor, std::size_t T) {
  return {s.lightened(), admissible_paths(s, factor, T), T};
}

namespace {

// All symmetric paths with at most n edges, admissible or not.
std::vector<Path> symmetric_paths(const Scheme& s, std::size_t n, std::size_t cap) {
  std::vector<Path> out;
  Path p;
  std::function<void()> dfs = [&] {
    if (out.size() >= cap) return;
    if (s.distributing(s.edge(p.back()).to)) out.push_back(p);
    if (p.size() == n) return;
    for (std::size_t e : s.out(s.edge(p.back()).to)) {
      p.push_back(e);
      dfs();
      p.pop_back();
    }
  };
  for (std::size_t v = 0; v < s.vertex_count(); ++v)
    if (s.collecting(v)) {
      p = {s.out(v).front()};
      dfs();
    }
  return out;
}

bool contains_edge(const Path& p, std::size_t e) {
  return std::find(p.begin(), p.end(), e) != p.end();
}

}  // namespace

ValidationReport validate_scheme(const Scheme& s, const FactorOracle& H, const ValidationBudget& budget) {
  ValidationReport r;
  auto fail = [&](int prop, std::string note) {
    if (std::find(r.violated.begin(), r.violated.end(), prop) == r.violated.end())
      r.violated.push_back(prop);
    r.notes.push_back("property " + std::to_string(prop) + ": " + std::move(note));
  };

  // 1: strongly connected, not a cycle, vertex kinds.
  if (s.edge_count() < 2) fail(1, "fewer than two edges");
  for (std::size_t v = 0; v < s.vertex_count(); ++v)
    if (!s.distributing(v) && !s.collecting(v)) fail(1, "vertex " + std::to_string(v) + " has no kind");
  try {
    if (s.edge_count() > 0) s.canonical(0, std::less<>());
  } catch (const Error&) {
    fail(1, "not strongly connected");
  }
  if (!r.ok()) return r;

  // 2: distinct first letters out of distributing, last letters into collecting.
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    std::set<Letter> seen;
    if (s.distributing(v))
      for (std::size_t e : s.out(v)) {
        const Word& w = s.edge(e).front;
        if (w.empty() || !seen.insert(w.front()).second) fail(2, "first letters at vertex " + std::to_string(v));
      }
    if (s.collecting(v))
      for (std::size_t e : s.in(v)) {
        const Word& w = s.edge(e).back;
        if (w.empty() || !seen.insert(w.back()).second) fail(2, "last letters at vertex " + std::to_string(v));
      }
  }

  // 5: edge words are factors.
  for (std::size_t e = 0; e < s.edge_count(); ++e)
    if (!H.contains(s.edge(e).front) || !H.contains(s.edge(e).back))
      fail(5, "edge " + std::to_string(e + 1) + " word is not a factor");

  auto factor = [&](WordView w) { return H.contains(w); };
  auto sym = symmetric_paths(s, budget.path_edges, 20000);
  auto adm = admissible_paths(s, factor, budget.path_edges);

  // 3: F(s) = B(s) on symmetric paths.
  for (const Path& p : sym)
    if (s.front_word(p) != s.back_word(p)) {
      fail(3, "front and back words differ");
      break;
    }

  // 4: an occurrence of F(s1) in F(s2) at k is an occurrence of s1 in s2 at k.
  std::vector<Word> words;
  for (const Path& p : adm) words.push_back(s.front_word(p));
  for (std::size_t i = 0; i < adm.size() && r.ok(); ++i)
    for (std::size_t j = 0; j < adm.size(); ++j) {
      const Word& a = words[i];
      const Word& b = words[j];
      if (a.size() > b.size() || a.empty()) continue;
      std::boyer_moore_horspool_searcher search(a.begin(), a.end());
      for (auto it = b.begin();;) {
        auto hit = std::search(it, b.end(), search);
        if (hit == b.end()) break;
        std::size_t k = static_cast<std::size_t>(hit - b.begin());
        it = hit + 1;
        bool found = false;
        for (std::size_t t = 0; t + adm[i].size() <= adm[j].size() && !found; ++t)
          found = std::equal(adm[i].begin(), adm[i].end(), adm[j].begin() + static_cast<std::ptrdiff_t>(t)) &&
                  s.offset_of(adm[j], t) == k;
        if (!found) {
          fail(4, "occurrence without a path occurrence");
          break;
        }
      }
    }

  // 6: every factor of length L lies in the word of an admissible path.
  std::size_t L = budget.factor_length;
  if (L == 0) {
    for (const auto& e : s.edges()) L = std::max(L, std::max(e.front.size(), e.back.size()));
    L = std::min<std::size_t>(L, 128);
  }
  std::vector<Word> uncovered;
  for (const Word& u : H.factors(L)) uncovered.push_back(u);
  std::size_t n = budget.path_edges;
  std::vector<Word> long_words = words;
  for (int round = 0; round < 3 && !uncovered.empty(); ++round) {
    std::erase_if(uncovered, [&](const Word& u) {
      for (const Word& w : long_words)
        if (w.size() >= u.size() && is_factor_of(u, w)) return true;
      return false;
    });
    n *= 2;
    if (!uncovered.empty() && round < 2) {
      long_words.clear();
      for (const Path& p : admissible_paths(s, factor, n)) long_words.push_back(s.front_word(p));
    }
  }
  if (!uncovered.empty()) {
    r.unverified.push_back(6);
    r.notes.push_back("property 6: " + std::to_string(uncovered.size()) + " factors not reached");
  }

  // 7: for each edge a word forcing it.
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    Path through = s.natural_right(s.natural_left({e}));
    if (!s.is_symmetric(through)) {
      r.unverified.push_back(7);
      continue;
    }
    Word u = s.front_word(through);
    if (!H.contains(u)) {
      r.unverified.push_back(7);
      continue;
    }
    for (std::size_t i = 0; i < adm.size(); ++i)
      if (words[i].size() >= u.size() && is_factor_of(u, words[i]) && !contains_edge(adm[i], e))
        fail(7, "edge " + std::to_string(e + 1) + " is not forced");
  }
  return r;
}

}  // namespace urec
