#include "urec/letter_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace urec {

Adjacency letter_graph(const Morphism& phi) {
  Adjacency g(phi.source_size());
  for (Letter a = 0; a < phi.source_size(); ++a) {
    for (Letter b : phi(a)) g[a].push_back(b);
    std::sort(g[a].begin(), g[a].end());
    g[a].erase(std::unique(g[a].begin(), g[a].end()), g[a].end());
  }
  return g;
}

Components strongly_connected(const Adjacency& g) {
  const int n = static_cast<int>(g.size());
  Components out;
  out.of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;

  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (Letter w : g[v]) {
      if (index[w] < 0) {
        visit(static_cast<int>(w));
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<Letter> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        out.of[w] = static_cast<int>(out.members.size());
        comp.push_back(static_cast<Letter>(w));
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.members.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return out;
}

std::vector<bool> cyclic_letters(const Adjacency& g) {
  auto comps = strongly_connected(g);
  std::vector<bool> out(g.size(), false);
  for (Letter a = 0; a < g.size(); ++a) {
    if (comps.members[comps.of[a]].size() > 1) out[a] = true;
    if (std::binary_search(g[a].begin(), g[a].end(), a)) out[a] = true;
  }
  return out;
}

std::vector<bool> growing_letters(const Morphism& phi) {
  auto g = letter_graph(phi);
  auto comps = strongly_connected(g);
  auto cyclic = cyclic_letters(g);
  // Growing iff some reachable cycle passes through a letter with a longer
  // image (phi non-erasing).
  std::vector<bool> seed(comps.members.size(), false);
  for (Letter a = 0; a < g.size(); ++a) {
    if (!cyclic[a]) continue;
    int c = comps.of[a];
    std::size_t inside = 0;
    for (Letter b : phi(a))
      if (comps.of[b] == c) ++inside;
    if (phi(a).size() >= 2 && inside >= 1) seed[c] = true;
  }
  std::vector<bool> comp_growing(comps.members.size(), false);
  for (std::size_t c = 0; c < comps.members.size(); ++c) {
    bool grow = seed[c];
    for (Letter a : comps.members[c])
      for (Letter b : g[a])
        if (comps.of[b] != static_cast<int>(c) && comp_growing[comps.of[b]]) grow = true;
    comp_growing[c] = grow;
  }
  std::vector<bool> out(g.size());
  for (Letter a = 0; a < g.size(); ++a) out[a] = comp_growing[comps.of[a]];
  return out;
}

std::vector<std::size_t> shortest_cycle(const Adjacency& g) {
  std::vector<std::size_t> out(g.size(), 0);
  for (Letter s = 0; s < g.size(); ++s) {
    std::vector<std::size_t> dist(g.size(), 0);
    std::vector<bool> seen(g.size(), false);
    std::queue<Letter> q;
    for (Letter b : g[s])
      if (!seen[b]) {
        seen[b] = true;
        dist[b] = 1;
        q.push(b);
      }
    while (!q.empty()) {
      Letter a = q.front();
      q.pop();
      if (a == s) {
        out[s] = dist[a];
        break;
      }
      for (Letter b : g[a])
        if (!seen[b]) {
          seen[b] = true;
          dist[b] = dist[a] + 1;
          q.push(b);
        }
    }
  }
  return out;
}

}  // namespace urec
