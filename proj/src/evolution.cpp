#include <algorithm>
#include <map>

#include "urec/rauzy.hpp"

namespace urec {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

Word cat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

}  // namespace

Evolution evolve(const Scheme& s, const FactorOracle& H) {
  auto sup = s.supporting_edges();
  if (sup.empty()) throw Error("scheme has no supporting edge");
  Evolution ev;
  const std::size_t v = ev.v = *std::min_element(sup.begin(), sup.end());
  const std::size_t c = s.edge(v).from, d = s.edge(v).to;
  const auto& xs = s.in(c);
  const auto& ys = s.out(d);
  const Word& V = s.edge(v).front;
  const std::size_t nv = s.vertex_count();
  const std::size_t n_sp = nv + xs.size() + ys.size();
  auto A = [&](std::size_t i) { return nv + i; };
  auto B = [&](std::size_t j) { return nv + xs.size() + j; };

  auto& g = ev.gadget;
  g.x_index.assign(s.edge_count(), npos);
  g.y_index.assign(s.edge_count(), npos);
  for (std::size_t i = 0; i < xs.size(); ++i) g.x_index[xs[i]] = i;
  for (std::size_t j = 0; j < ys.size(); ++j) g.y_index[ys[j]] = j;

  // S'
  std::vector<Word> front, back;
  std::vector<std::pair<std::size_t, std::size_t>> key;  // numbering, (n, 0) or (n_x, n_y)
  g.old_to_sp.assign(s.edge_count(), npos);
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    if (e == v) continue;
    const SchemeEdge& E = s.edge(e);
    g.old_to_sp[e] = g.from.size();
    g.from.push_back(g.y_index[e] != npos ? B(g.y_index[e]) : E.from);
    g.to.push_back(g.x_index[e] != npos ? A(g.x_index[e]) : E.to);
    g.origin.push_back(e);
    g.good.push_back(true);
    front.push_back(g.y_index[e] != npos ? cat(V, E.front) : E.front);
    back.push_back(g.x_index[e] != npos ? cat(E.back, V) : E.back);
    key.emplace_back(e + 1, 0);
  }
  g.vij.assign(xs.size(), std::vector<std::size_t>(ys.size(), npos));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const Word& X = s.edge(xs[i]).back;
      const Word& Y = s.edge(ys[j]).front;
      bool good = H.contains(cat(cat(X, V), Y));
      if (!good) ev.bad.emplace(xs[i], ys[j]);
      g.vij[i][j] = g.from.size();
      g.from.push_back(A(i));
      g.to.push_back(B(j));
      g.origin.push_back(v);
      g.good.push_back(good);
      front.push_back(Y);
      back.push_back(X);
      key.emplace_back(xs[i] + 1, ys[j] + 1);
    }
  const std::size_t m_sp = g.from.size();
  std::vector<std::size_t> in_all(n_sp, 0), out_all(n_sp, 0);
  g.gin.assign(n_sp, 0);
  g.gout.assign(n_sp, 0);
  g.good_out.assign(n_sp, {});
  g.good_in.assign(n_sp, {});
  for (std::size_t e = 0; e < m_sp; ++e) {
    ++out_all[g.from[e]];
    ++in_all[g.to[e]];
    if (!g.good[e]) continue;
    ++g.gout[g.from[e]];
    ++g.gin[g.to[e]];
    g.good_out[g.from[e]].push_back(e);
    g.good_in[g.to[e]].push_back(e);
  }
  g.is_A.assign(n_sp, false);
  g.is_B.assign(n_sp, false);
  for (std::size_t i = 0; i < xs.size(); ++i) g.is_A[A(i)] = true;
  for (std::size_t j = 0; j < ys.size(); ++j) g.is_B[B(j)] = true;
  auto sp_distributing = [&](std::size_t u) { return in_all[u] == 1 && out_all[u] > 1; };
  auto sp_front = [&](const Path& p) {
    Word w;
    for (std::size_t t = 0; t < p.size(); ++t)
      if (t == 0 || sp_distributing(g.from[p[t]])) w.insert(w.end(), front[p[t]].begin(), front[p[t]].end());
    return w;
  };
  auto sp_collecting = [&](std::size_t u) { return in_all[u] > 1 && out_all[u] == 1; };
  auto sp_back = [&](const Path& p) {
    Word w;
    for (std::size_t t = 0; t < p.size(); ++t)
      if (t + 1 == p.size() || sp_collecting(g.to[p[t]])) w.insert(w.end(), back[p[t]].begin(), back[p[t]].end());
    return w;
  };

  // S''
  auto nonvanishing = [&](std::size_t u) { return g.gin[u] > 1 || g.gout[u] > 1; };
  std::vector<std::size_t> vmap(n_sp, npos);
  std::size_t nv2 = 0;
  for (std::size_t u = 0; u < n_sp; ++u)
    if (nonvanishing(u)) {
      if (g.gin[u] > 1 && g.gout[u] > 1) throw Error("evolution produced a vertex with two kinds");
      vmap[u] = nv2++;
    }
  std::vector<Path> chains;
  for (std::size_t u = 0; u < n_sp; ++u) {
    if (vmap[u] == npos) continue;
    for (std::size_t e : g.good_out[u]) {
      Path ch{e};
      std::size_t w = g.to[e];
      while (vmap[w] == npos) {
        if (g.gout[w] != 1 || ch.size() > m_sp) throw Error("evolution produced a dead end");
        ch.push_back(g.good_out[w].front());
        w = g.to[ch.back()];
      }
      chains.push_back(std::move(ch));
    }
  }
  std::vector<std::size_t> chain_from(chains.size()), chain_to(chains.size());
  std::vector<std::vector<std::size_t>> out2(nv2), in2(nv2);
  for (std::size_t k = 0; k < chains.size(); ++k) {
    chain_from[k] = vmap[g.from[chains[k].front()]];
    chain_to[k] = vmap[g.to[chains[k].back()]];
    out2[chain_from[k]].push_back(k);
    in2[chain_to[k]].push_back(k);
  }
  auto dist2 = [&](std::size_t u) { return in2[u].size() == 1 && out2[u].size() > 1; };
  auto coll2 = [&](std::size_t u) { return in2[u].size() > 1 && out2[u].size() == 1; };
  std::vector<SchemeEdge> edges2;
  for (std::size_t k = 0; k < chains.size(); ++k) {
    Path right = chains[k];
    std::size_t guard = chains.size() + 1;
    for (std::size_t u = chain_to[k]; !dist2(u); u = chain_to[out2[u].front()]) {
      if (out2[u].size() != 1 || guard-- == 0) throw Error("evolution: no natural extension");
      const Path& nx = chains[out2[u].front()];
      right.insert(right.end(), nx.begin(), nx.end());
    }
    Path left = chains[k];
    guard = chains.size() + 1;
    for (std::size_t u = chain_from[k]; !coll2(u); u = chain_from[in2[u].front()]) {
      if (in2[u].size() != 1 || guard-- == 0) throw Error("evolution: no natural extension");
      const Path& pv = chains[in2[u].front()];
      left.insert(left.begin(), pv.begin(), pv.end());
    }
    edges2.push_back({chain_from[k], chain_to[k], sp_front(right), sp_back(left)});
  }
  Scheme raw(nv2, std::move(edges2));
  auto rank = [&](std::size_t a, std::size_t b) { return key[chains[a].front()] < key[chains[b].front()]; };
  std::size_t root = 0;
  for (std::size_t k = 1; k < chains.size(); ++k)
    if (rank(k, root)) root = k;
  auto [next, to_new] = raw.canonical(root, rank);
  ev.next = std::move(next);

  const std::size_t m2 = chains.size();
  ev.image.assign(m2, {});
  ev.starts_at_B.assign(m2, false);
  ev.ends_at_A.assign(m2, false);
  g.first_to_new.assign(m_sp, npos);
  for (std::size_t k = 0; k < m2; ++k) {
    std::size_t id = to_new[k];
    for (std::size_t e : chains[k]) ev.image[id].push_back(g.origin[e]);
    ev.starts_at_B[id] = g.is_B[g.from[chains[k].front()]];
    ev.ends_at_A[id] = g.is_A[g.to[chains[k].back()]];
    g.first_to_new[chains[k].front()] = id;
  }
  return ev;
}

Path Evolution::map_path(const Path& p) const {
  Path out;
  if (p.empty()) return out;
  if (starts_at_B[p.front()]) out.push_back(v);
  for (std::size_t e : p) out.insert(out.end(), image.at(e).begin(), image.at(e).end());
  if (ends_at_A[p.back()]) out.push_back(v);
  return out;
}

std::optional<Path> Evolution::lift(const Path& p) const {
  const auto& g = gadget;
  if (p.empty() || (p.size() == 1 && p[0] == v)) throw Error("cannot lift the supporting edge");
  Path pi;
  for (std::size_t t = 0; t < p.size(); ++t) {
    if (p[t] != v) {
      pi.push_back(g.old_to_sp.at(p[t]));
      continue;
    }
    if (t == 0 || t + 1 == p.size()) continue;
    std::size_t i = g.x_index.at(p[t - 1]), j = g.y_index.at(p[t + 1]);
    if (i == npos || j == npos) throw Error("lifted path is not a path");
    std::size_t e = g.vij[i][j];
    if (!g.good[e]) return std::nullopt;
    pi.push_back(e);
  }
  const std::size_t guard = g.from.size() + 1;
  for (std::size_t u = g.from[pi.front()], n = 0; g.gin[u] <= 1; u = g.from[pi.front()]) {
    if (g.gin[u] == 0 || ++n > guard) return std::nullopt;
    pi.insert(pi.begin(), g.good_in[u].front());
  }
  for (std::size_t w = g.to[pi.back()], n = 0; g.gout[w] <= 1; w = g.to[pi.back()]) {
    if (g.gout[w] == 0 || ++n > guard) return std::nullopt;
    pi.push_back(g.good_out[w].front());
  }
  Path out;
  for (std::size_t t = 0; t < pi.size(); ++t) {
    std::size_t u = g.from[pi[t]];
    if (g.gin[u] > 1 || g.gout[u] > 1) {
      std::size_t id = g.first_to_new.at(pi[t]);
      if (id == npos) throw Error("lifted path leaves the evolved scheme");
      out.push_back(id);
    }
  }
  return out;
}

ProtocolEntry protocol_entry(const Scheme& s, const Evolution& ev) {
  return {s.lightened(), ev.bad};
}

}  // namespace urec
