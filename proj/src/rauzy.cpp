#include "urec/rauzy.hpp"

#include <algorithm>
#include <map>

namespace urec {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct RauzyEdge {
  std::size_t from = 0, to = 0;
  Word start;     // word of the first Rauzy vertex
  Word appended;  // one letter per Rauzy edge
};

Word label(const std::vector<RauzyEdge>& edges, const Path& p) {
  Word w = edges[p.front()].start;
  for (std::size_t e : p) w.insert(w.end(), edges[e].appended.begin(), edges[e].appended.end());
  return w;
}

}  // namespace

Scheme rauzy_scheme(const FactorOracle& H, std::size_t n) {
  if (n == 0) throw Error("Rauzy graph order must be positive");
  std::vector<Word> verts;
  for (const Word& w : H.factors(n)) verts.push_back(w);
  std::map<Word, std::size_t> vid;
  for (std::size_t i = 0; i < verts.size(); ++i) vid[verts[i]] = i;
  std::vector<std::vector<Letter>> succ(verts.size());
  std::vector<std::size_t> indeg(verts.size(), 0);
  for (const Word& f : H.factors(n + 1)) {
    std::size_t a = vid.at(Word(f.begin(), f.end() - 1));
    succ[a].push_back(f.back());
    ++indeg[vid.at(Word(f.begin() + 1, f.end()))];
  }
  auto step = [&](std::size_t a, Letter x) {
    Word w(verts[a].begin() + 1, verts[a].end());
    w.push_back(x);
    return vid.at(w);
  };

  // scheme vertices: collecting part and distributing part of special factors
  std::vector<std::size_t> cpart(verts.size(), npos), dpart(verts.size(), npos);
  std::size_t nv = 0;
  std::vector<RauzyEdge> edges;
  for (std::size_t a = 0; a < verts.size(); ++a) {
    if (indeg[a] > 1) cpart[a] = nv++;
    if (succ[a].size() > 1) dpart[a] = nv++;
    if (cpart[a] != npos && dpart[a] != npos) edges.push_back({cpart[a], dpart[a], verts[a], {}});
  }
  if (nv == 0) throw Error("Rauzy graph is a cycle: the word is periodic");
  for (std::size_t a = 0; a < verts.size(); ++a) {
    std::size_t from = dpart[a] != npos ? dpart[a] : cpart[a];
    if (from == npos) continue;
    for (Letter x : succ[a]) {
      RauzyEdge e{from, 0, verts[a], {x}};
      std::size_t b = step(a, x);
      while (cpart[b] == npos && dpart[b] == npos) {
        e.appended.push_back(succ[b].front());
        b = step(b, succ[b].front());
      }
      e.to = cpart[b] != npos ? cpart[b] : dpart[b];
      edges.push_back(std::move(e));
    }
  }

  std::vector<std::vector<std::size_t>> out(nv), in(nv);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].from].push_back(e);
    in[edges[e].to].push_back(e);
  }
  auto distributing = [&](std::size_t v) { return in[v].size() == 1 && out[v].size() > 1; };
  auto collecting = [&](std::size_t v) { return in[v].size() > 1 && out[v].size() == 1; };

  std::vector<SchemeEdge> words;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    Path right{e};
    while (!distributing(edges[right.back()].to)) right.push_back(out[edges[right.back()].to].front());
    Word f = label(edges, right);
    if (!collecting(edges[e].from)) f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n));
    Path left{e};
    while (!collecting(edges[left.front()].from)) left.insert(left.begin(), in[edges[left.front()].from].front());
    Word b = label(edges, left);
    if (!distributing(edges[e].to)) b.resize(b.size() - n);
    words.push_back({edges[e].from, edges[e].to, std::move(f), std::move(b)});
  }
  Scheme s(nv, std::move(words));
  // number edges canonically from the first edge, ordered by front word
  auto rank = [&](std::size_t x, std::size_t y) { return s.edge(x).front < s.edge(y).front; };
  return s.canonical(0, rank).first;
}

Scheme initial_scheme(const FactorOracle& H, std::size_t min_order) {
  for (std::size_t n = std::max<std::size_t>(min_order, 1); n < 4096; ++n) {
    Scheme s = rauzy_scheme(H, n);
    bool kinds = s.edge_count() >= 2;
    for (std::size_t v = 0; v < s.vertex_count() && kinds; ++v) kinds = s.distributing(v) || s.collecting(v);
    if (kinds && !s.supporting_edges().empty()) return s;
  }
  throw Error("no Rauzy scheme found");
}

}  // namespace urec
