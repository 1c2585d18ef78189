#pragma once

// Shared test utilities: independent oracles (exact rational rank, potential
// and cycle based balance/subgroup computations) and seeded random gain-graph
// generators. Everything here deliberately avoids the library's own
// elimination / forest-switching code paths.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "orbitrig/framework.hpp"
#include "orbitrig/gain_graph.hpp"
#include "orbitrig/group.hpp"

namespace testutil {

using orbitrig::AbelianGroup;
using orbitrig::GainEdge;
using orbitrig::GainGraph;
using orbitrig::GroupElement;

// ---------------------------------------------------------------------------
// Exact rational arithmetic for the rank oracle.

struct Frac {
  long long num = 0;
  long long den = 1;

  static long long gcd(long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
  static Frac make(long long n, long long d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = gcd(n, d);
    if (g == 0) g = 1;
    return Frac{n / g, d / g};
  }
  bool zero() const { return num == 0; }
  Frac operator*(const Frac& o) const {
    __int128 n = static_cast<__int128>(num) * o.num;
    __int128 d = static_cast<__int128>(den) * o.den;
    // Inputs stay tiny in these tests; reduce eagerly to keep it that way.
    Frac r;
    long long g1 = gcd(num, o.den), g2 = gcd(o.num, den);
    r.num = (num / g1) * (o.num / g2);
    r.den = (den / g2) * (o.den / g1);
    (void)n;
    (void)d;
    return make(r.num, r.den);
  }
  Frac operator/(const Frac& o) const { return *this * Frac{o.den, o.num}; }
  Frac operator-(const Frac& o) const {
    long long n = num * o.den - o.num * den;
    long long d = den * o.den;
    return make(n, d);
  }
};

// Exact rank of a small rational matrix by Gaussian elimination.
inline int exact_rank(std::vector<std::vector<Frac>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!m[r][c].zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].zero()) continue;
      Frac f = m[r][c] / m[rank][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] = m[r][cc] - f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Balance / subgroup oracles.

// F is balanced iff some potential phi : V(F) -> Gamma satisfies
// psi(e) = phi(head) - phi(tail) on every edge of F. Brute force over all
// assignments; independent of the library's forest switching.
inline bool balanced_oracle(const GainGraph& g, const std::vector<int>& edge_ids) {
  const AbelianGroup& grp = g.group();
  std::vector<int> verts;
  for (int id : edge_ids) {
    verts.push_back(g.edges()[id].tail);
    verts.push_back(g.edges()[id].head);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const int n = static_cast<int>(verts.size());
  if (n == 0) return true;
  auto pos = [&](int v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::vector<int> phi(n, 0);
  while (true) {
    bool ok = true;
    for (int id : edge_ids) {
      const GainEdge& e = g.edges()[id];
      GroupElement want = grp.sub(grp.element(phi[pos(e.head)]), grp.element(phi[pos(e.tail)]));
      if (!(want == e.gain)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    int i = 0;
    while (i < n && phi[i] == grp.order() - 1) phi[i++] = 0;
    if (i == n) return false;
    ++phi[i];
  }
}

// All gains of vertex-simple cycles inside F (loops and parallel 2-cycles
// included), collected by DFS over vertex-distinct paths.
inline std::vector<GroupElement> cycle_gains_oracle(const GainGraph& g,
                                                    const std::vector<int>& edge_ids) {
  const AbelianGroup& grp = g.group();
  std::vector<GroupElement> gains;
  for (int id : edge_ids) {
    const GainEdge& e = g.edges()[id];
    if (e.is_loop()) gains.push_back(e.gain);
  }
  // Paths: (current vertex, accumulated gain, used vertices, used edges).
  struct Step {
    int vertex;
    GroupElement acc;
  };
  std::vector<int> nonloops;
  for (int id : edge_ids) {
    if (!g.edges()[id].is_loop()) nonloops.push_back(id);
  }
  std::vector<int> path_vertices;
  std::vector<char> used_edge(g.edge_count(), 0);
  std::function<void(int, int, GroupElement)> dfs = [&](int start, int at, GroupElement acc) {
    for (int id : nonloops) {
      if (used_edge[id]) continue;
      const GainEdge& e = g.edges()[id];
      int other;
      if (e.tail == at) {
        other = e.head;
      } else if (e.head == at) {
        other = e.tail;
      } else {
        continue;
      }
      GroupElement next = grp.add(acc, g.gain_from(e, at));
      if (other == start) {
        gains.push_back(next);
        continue;
      }
      if (std::find(path_vertices.begin(), path_vertices.end(), other) != path_vertices.end()) {
        continue;
      }
      used_edge[id] = 1;
      path_vertices.push_back(other);
      dfs(start, other, next);
      path_vertices.pop_back();
      used_edge[id] = 0;
    }
  };
  for (int v : g.vertices()) {
    path_vertices = {v};
    dfs(v, v, grp.identity());
  }
  return gains;
}

inline std::vector<GroupElement> subgroup_oracle(const GainGraph& g,
                                                 const std::vector<int>& edge_ids) {
  return orbitrig::generated_subgroup(g.group(), cycle_gains_oracle(g, edge_ids));
}

// ---------------------------------------------------------------------------
// Random gain graphs.

// Random multigraph with loops; no repeated canonical edge, no identity-gain
// loops. Vertices are 1..nv.
inline GainGraph random_gain_graph(const AbelianGroup& grp, int nv, int ne, std::mt19937_64& rng) {
  std::vector<int> vertices(nv);
  std::iota(vertices.begin(), vertices.end(), 1);
  std::set<std::tuple<int, int, int>> seen;
  std::vector<std::tuple<int, int, GroupElement>> edges;
  int guard = 0;
  while (static_cast<int>(edges.size()) < ne && guard++ < 10000) {
    int u = 1 + static_cast<int>(rng() % nv);
    int v = 1 + static_cast<int>(rng() % nv);
    GroupElement gain = grp.element(static_cast<int>(rng() % grp.order()));
    if (u == v) {
      if (gain.is_identity()) continue;
      if (grp.index_of(gain) > grp.index_of(grp.negate(gain))) gain = grp.negate(gain);
    }
    int a = std::min(u, v), b = std::max(u, v);
    GroupElement canon = (u <= v) ? gain : grp.negate(gain);
    if (!seen.insert({a, b, grp.index_of(canon)}).second) continue;
    edges.emplace_back(u, v, gain);
  }
  return GainGraph(grp, vertices, edges);
}

inline std::vector<int> random_subset(int universe, std::mt19937_64& rng) {
  std::vector<int> out;
  for (int i = 0; i < universe; ++i) {
    if (rng() & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace testutil
