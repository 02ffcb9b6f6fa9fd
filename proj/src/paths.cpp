#include "urec/paths.hpp"

#include <algorithm>
#include <limits>

namespace urec {

std::optional<Path> trim_right(const Scheme& s, const Path& p) {
  for (std::size_t i = p.size(); i-- > 1;)
    if (s.distributing(s.edge(p[i]).from)) return Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
  return std::nullopt;
}

std::optional<Path> trim_left(const Scheme& s, const Path& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (s.collecting(s.edge(p[i]).to)) return Path(p.begin() + static_cast<std::ptrdiff_t>(i + 1), p.end());
  return std::nullopt;
}

std::optional<Path> cut(const Scheme& s, const Path& p) {
  auto r = trim_right(s, p);
  if (!r) return std::nullopt;
  return trim_left(s, *r);
}

namespace {

constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

struct Node {
  std::size_t edge;
  std::size_t parent;
};

struct State {
  std::size_t node = unbounded;    // last edge in the node pool
  std::size_t length = 0;          // edges on the path
  std::size_t boff = 0;            // offset_of(path, length)
  std::size_t flen = 0;            // |F(path)|
  std::size_t bound = unbounded;   // new occurrences must start before this
  std::vector<std::size_t> alive;  // candidate start offsets of A
};

// Appends a generator word at position st.flen; returns true when some
// occurrence of A is now complete.
bool feed(State& st, WordView w, WordView A) {
  const std::size_t P = st.flen;
  bool complete = false;
  std::vector<std::size_t> next;
  auto matches = [&](std::size_t o) {
    // A[max(P,o)-o ..] against w[max(P,o)-P ..]
    std::size_t from = std::max(P, o);
    std::size_t len = std::min(P + w.size(), o + A.size()) - from;
    return std::equal(w.begin() + static_cast<std::ptrdiff_t>(from - P),
                      w.begin() + static_cast<std::ptrdiff_t>(from - P + len),
                      A.begin() + static_cast<std::ptrdiff_t>(from - o));
  };
  for (std::size_t o : st.alive) {
    if (!matches(o)) continue;
    if (o + A.size() <= P + w.size()) complete = true;
    else next.push_back(o);
  }
  for (std::size_t o = P; o < P + w.size() && o < st.bound; ++o) {
    if (w[o - P] != A[0] || !matches(o)) continue;
    if (o + A.size() <= P + w.size()) complete = true;
    else next.push_back(o);
  }
  st.alive = std::move(next);
  st.flen += w.size();
  return complete;
}

Path minimize(const Scheme& s, Path p, WordView A) {
  while (true) {
    if (auto l = trim_left(s, p); l && s.is_symmetric(*l) && is_factor_of(A, s.front_word(*l))) {
      p = std::move(*l);
      continue;
    }
    if (auto r = trim_right(s, p); r && s.is_symmetric(*r) && is_factor_of(A, s.front_word(*r))) {
      p = std::move(*r);
      continue;
    }
    return p;
  }
}

}  // namespace

std::vector<Path> locate_all(const Scheme& s, WordView A, const FactorTest& factor) {
  std::vector<Path> found;
  if (A.empty()) return found;
  std::vector<State> stack;
  std::vector<Node> pool;
  auto path_of = [&](const State& st) {
    Path p(st.length);
    for (std::size_t n = st.node, i = st.length; i-- > 0; n = pool[n].parent) p[i] = pool[n].edge;
    return p;
  };
  auto push_edge = [&](State st, std::size_t e) {
    const SchemeEdge& E = s.edge(e);
    bool gen = st.length == 0 || s.distributing(E.from);
    pool.push_back({e, st.node});
    st.node = pool.size() - 1;
    ++st.length;
    if (s.collecting(E.to)) {
      st.boff += E.back.size();
      if (st.bound == unbounded) st.bound = st.boff;
    }
    if (gen && feed(st, E.front, A)) {
      Path p = minimize(s, s.natural_right(path_of(st)), A);
      if (factor(s.front_word(p)) && std::find(found.begin(), found.end(), p) == found.end())
        found.push_back(std::move(p));
      return;
    }
    if (st.alive.empty() && st.bound <= st.flen) return;
    stack.push_back(std::move(st));
  };
  for (std::size_t v = 0; v < s.vertex_count(); ++v)
    if (s.collecting(v)) push_edge(State{}, s.out(v).front());
  const std::size_t limit = 4 * (A.size() + 8) * (s.edge_count() + 1);
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    if (st.length > limit) throw Error("locate: search does not terminate");
    const auto& outs = s.out(s.edge(pool[st.node].edge).to);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (i + 1 == outs.size()) push_edge(std::move(st), outs[i]);
      else push_edge(st, outs[i]);
    }
  }
  // only inclusion-minimal paths
  std::vector<Path> out;
  for (const Path& p : found) {
    bool minimal = true;
    for (const Path& q : found)
      if (q.size() < p.size() && std::search(p.begin(), p.end(), q.begin(), q.end()) != p.end()) minimal = false;
    if (minimal) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::optional<Path> locate(const Scheme& s, WordView A, const FactorTest& factor) {
  auto all = locate_all(s, A, factor);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Path glue(const Path& ab, const Path& bc, const Path& b) {
  if (b.size() > ab.size() || b.size() > bc.size() || !std::equal(b.begin(), b.end(), ab.end() - static_cast<std::ptrdiff_t>(b.size())) ||
      !std::equal(b.begin(), b.end(), bc.begin()))
    throw Error("glue: paths do not overlap along the middle path");
  Path out = ab;
  out.insert(out.end(), bc.begin() + static_cast<std::ptrdiff_t>(b.size()), bc.end());
  return out;
}

}  // namespace urec
