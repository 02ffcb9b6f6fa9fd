#include "urec/bounded.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "urec/letter_graph.hpp"

namespace urec {

bool LetterClass::bounded(WordView w) const {
  return std::none_of(w.begin(), w.end(), [&](Letter a) { return growing.at(a); });
}

std::size_t LetterClass::growing_count() const {
  return static_cast<std::size_t>(std::count(growing.begin(), growing.end(), true));
}

LetterClass classify_letters(const Morphism& phi) {
  if (!phi.non_erasing()) throw Error("classify_letters: substitution must be non-erasing");
  return LetterClass{growing_letters(phi)};
}

namespace {

// w = lead t1 b1 t2 b2 ... tk bk with t_i growing and lead, b_i bounded.
struct Decomposition {
  Word lead;
  std::vector<std::pair<Letter, Word>> items;
};

Decomposition decompose(const LetterClass& cls, WordView w) {
  Decomposition d;
  Word* block = &d.lead;
  for (Letter a : w) {
    if (cls.is_growing(a)) {
      d.items.emplace_back(a, Word{});
      block = &d.items.back().second;
    } else {
      block->push_back(a);
    }
  }
  return d;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::string GraphQ::vertex_name(const Alphabet& al, std::size_t v) const {
  const QVertex& x = vertices.at(v);
  switch (x.kind) {
    case QVertex::Single:
      return al.token(x.first);
    case QVertex::Pair:
      return al.token(x.first) + "," + al.token(x.second);
    case QVertex::Tail:
      return al.token(x.first) + ",t";
  }
  return {};
}

std::string GraphQ::dot(const Alphabet& al) const {
  std::ostringstream out;
  out << "digraph Q {\n";
  for (std::size_t v = 0; v < vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << vertex_name(al, v) << "\"];\n";
  auto w = [&](const Word& x) { return x.empty() ? std::string("ε") : al.format(x); };
  for (const auto& e : edges)
    out << "  v" << e.from << " -> v" << e.to << " [label=\"{" << w(e.left) << ";" << w(e.right)
        << "}\"];\n";
  out << "}\n";
  return out.str();
}

GraphQ build_graph_q(const MorphicSystem& sys, const LetterClass& cls) {
  if (!cls.is_growing(sys.start)) throw Error("graph Q: start letter is bounded");
  GraphQ q;
  std::map<QVertex, std::size_t> index;
  std::queue<std::size_t> todo;
  auto vertex = [&](QVertex v) {
    auto [it, fresh] = index.emplace(v, q.vertices.size());
    if (fresh) {
      q.vertices.push_back(v);
      todo.push(it->second);
    }
    return it->second;
  };
  std::set<std::tuple<std::size_t, std::size_t, Word, Word>> seen;
  auto edge = [&](std::size_t from, QVertex to, Word left, Word right) {
    std::size_t t = vertex(to);
    if (seen.emplace(from, t, left, right).second)
      q.edges.push_back(QEdge{from, t, std::move(left), std::move(right)});
  };

  vertex(QVertex{QVertex::Single, sys.start, 0});
  while (!todo.empty()) {
    std::size_t v = todo.front();
    todo.pop();
    const QVertex x = q.vertices[v];
    const Decomposition d = decompose(cls, sys.phi(x.first));
    const auto& items = d.items;
    switch (x.kind) {
      case QVertex::Single:
        for (std::size_t i = 0; i < items.size(); ++i) {
          edge(v, QVertex{QVertex::Single, items[i].first, 0}, {}, {});
          if (i + 1 < items.size())
            edge(v, QVertex{QVertex::Pair, items[i].first, items[i + 1].first}, items[i].second, {});
        }
        edge(v, QVertex{QVertex::Tail, items.back().first, 0}, items.back().second, {});
        break;
      case QVertex::Tail:
        edge(v, QVertex{QVertex::Tail, items.back().first, 0}, items.back().second, {});
        break;
      case QVertex::Pair: {
        const Decomposition e = decompose(cls, sys.phi(x.second));
        edge(v, QVertex{QVertex::Pair, items.back().first, e.items.front().first},
             items.back().second, e.lead);
        break;
      }
    }
  }
  return q;
}

namespace {

// The eventually periodic part of w, phi^m(w), phi^2m(w), ... concatenated
// over one period; reversed order when the iterates grow leftwards.
Word periodic_part(const Morphism& rho, Word w, bool reversed) {
  std::map<Word, std::size_t> first_seen;
  std::vector<Word> seq;
  while (!first_seen.count(w)) {
    first_seen.emplace(w, seq.size());
    seq.push_back(w);
    w = image(rho, w);
  }
  std::size_t i0 = first_seen[w];
  Word u;
  if (!reversed) {
    for (std::size_t i = i0; i < seq.size(); ++i) u = concat(std::move(u), seq[i]);
  } else {
    for (std::size_t i = seq.size(); i-- > i0;) u = concat(std::move(u), seq[i]);
  }
  return u;
}

}  // namespace

BoundedFactorReport bounded_factors(const MorphicSystem& sys, const LetterClass&,
                                    const GraphQ& q) {
  Adjacency adj(q.vertices.size());
  for (const auto& e : q.edges) adj[e.from].push_back(static_cast<Letter>(e.to));
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  auto comps = strongly_connected(adj);

  for (std::size_t ei = 0; ei < q.edges.size(); ++ei) {
    const QEdge& hot = q.edges[ei];
    if (hot.empty_label() || comps.of[hot.from] != comps.of[hot.to]) continue;
    // Close the cycle: shortest path hot.to -> hot.from inside the component.
    const int comp = comps.of[hot.from];
    std::vector<std::ptrdiff_t> via(q.vertices.size(), -1);
    std::vector<bool> seen(q.vertices.size(), false);
    std::queue<std::size_t> bfs;
    bfs.push(hot.to);
    seen[hot.to] = true;
    while (!bfs.empty() && !seen[hot.from]) {
      std::size_t v = bfs.front();
      bfs.pop();
      for (std::size_t j = 0; j < q.edges.size(); ++j) {
        const QEdge& e = q.edges[j];
        if (e.from != v || seen[e.to] || comps.of[e.to] != comp) continue;
        seen[e.to] = true;
        via[e.to] = static_cast<std::ptrdiff_t>(j);
        bfs.push(e.to);
      }
    }
    std::vector<std::size_t> cycle{ei};
    std::vector<std::size_t> back;
    for (std::size_t v = hot.from; v != hot.to; v = q.edges[back.back()].from)
      back.push_back(static_cast<std::size_t>(via[v]));
    cycle.insert(cycle.end(), back.rbegin(), back.rend());

    // One round maps a block b to L·rho(b)·R with rho = phi^m.
    Word left, right;
    for (std::size_t j : cycle) {
      left = concat(q.edges[j].left, image(sys.phi, left));
      right = concat(image(sys.phi, right), q.edges[j].right);
    }
    Morphism rho = power(sys.phi, static_cast<unsigned>(cycle.size()));
    if (!left.empty()) return InfinitePower{periodic_part(rho, left, false)};
    return InfinitePower{periodic_part(rho, right, true)};
  }

  // Finite case: enumerate (vertex, block) states.
  std::set<std::pair<std::size_t, Word>> states;
  std::queue<std::pair<std::size_t, Word>> todo;
  std::vector<std::vector<std::size_t>> out(q.vertices.size());
  for (std::size_t j = 0; j < q.edges.size(); ++j) out[q.edges[j].from].push_back(j);
  states.emplace(0, Word{});
  todo.emplace(0, Word{});
  std::set<Word> blocks;
  while (!todo.empty()) {
    auto [v, block] = todo.front();
    todo.pop();
    for (std::size_t j : out[v]) {
      const QEdge& e = q.edges[j];
      Word next = concat(concat(e.left, image(sys.phi, block)), e.right);
      if (q.vertices[e.to].kind == QVertex::Single) next.clear();
      else blocks.insert(next);
      if (states.emplace(e.to, next).second) todo.emplace(e.to, std::move(next));
    }
  }
  FiniteBounded fin;
  fin.words.insert(Word{});
  for (const Word& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j <= b.size(); ++j) fin.words.emplace(b.begin() + i, b.begin() + j);
  return fin;
}

bool periodic_with_period(const MorphicSystem& sys, WordView u) {
  if (u.empty()) throw Error("periodic_with_period: empty period");
  std::set<Word> rotations;
  Word r(u.begin(), u.end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    rotations.insert(r);
    std::rotate(r.begin(), r.begin() + 1, r.end());
  }
  for (const Word& f : factors(sys, u.size()))
    if (!rotations.count(f)) return false;
  return true;
}

}  // namespace urec
