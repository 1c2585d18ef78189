#include "orbitrig/analyzer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "orbitrig/errors.hpp"

namespace orbitrig {

std::optional<PlaneSymmetry> detect_plane_symmetry(const OrthogonalRep& tau) {
  if (tau.dim() != 2) return std::nullopt;
  const AbelianGroup& grp = tau.group();
  if (grp.order() == 2) {
    const RealMatrix& m = tau.matrix_at(1);
    double det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    return det < 0 ? PlaneSymmetry::Mirror : PlaneSymmetry::HalfTurn;
  }
  if (grp.order() == 3) return PlaneSymmetry::ThreeFold;
  return std::nullopt;
}

bool decide_rigid_combinatorial(const GainGraph& graph, PlaneSymmetry symmetry) {
  const int nv = graph.vertex_count();
  switch (symmetry) {
    case PlaneSymmetry::Mirror:
    case PlaneSymmetry::HalfTurn: {
      if (graph.group().order() != 2) {
        throw ValidationError("mirror/half-turn analysis requires an order-2 gain group");
      }
      if (graph.edge_count() < 2 * nv - 1) return false;
      return matroid_rank(graph, SparsityParams(2, 3, 2)) == 2 * nv - 2;
    }
    case PlaneSymmetry::ThreeFold: {
      if (graph.group().order() != 3) {
        throw ValidationError("three-fold analysis requires an order-3 gain group");
      }
      return matroid_rank(graph, SparsityParams(2, 3, 1)) == 2 * nv - 1;
    }
  }
  throw ValidationError("unsupported symmetry class");
}

RigidityReport degrees_of_freedom(const GainGraph& graph, const OrthogonalRep& tau,
                                  const std::vector<std::uint64_t>& seeds, double rel_tol) {
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  const AbelianGroup& grp = graph.group();
  CoveringGraph cover = covering_graph(graph);

  RigidityReport report;
  report.group_desc = grp.to_string();
  report.quotient_vertices = graph.vertex_count();
  report.quotient_edges = graph.edge_count();
  report.cover_vertices = cover.graph.vertex_count;
  report.cover_edges = cover.graph.edge_count();

  BlockRankProfile profile = generic_block_ranks(graph, tau, seeds, rel_tol);
  report.rank_sum = profile.total;
  report.cover_rank = generic_cover_rank(graph, tau, seeds, rel_tol);
  if (report.rank_sum != report.cover_rank) {
    throw TheoremMismatchError("block rank sum " + std::to_string(report.rank_sum) +
                               " differs from cover rank " + std::to_string(report.cover_rank));
  }

  QuotientPlacement placement = random_symmetric_placement(graph, tau, seeds.front());
  for (int ji = 0; ji < grp.order(); ++ji) {
    GroupElement j = grp.element(ji);
    BlockReport block;
    block.irrep = j;
    block.rows = graph.edge_count();
    block.cols = tau.dim() * graph.vertex_count();
    block.nonzero_rows = nonzero_row_count(graph, j);
    block.rank = profile.ranks[ji];
    block.trivial_dim = trivial_block_dim(tau, j);
    block.flex = symmetric_flex(graph, tau, placement, j, rel_tol).has_value();
    if (block.flex && !report.flex_block) report.flex_block = j;
    report.blocks.push_back(std::move(block));
  }

  const int d = tau.dim();
  const int n = cover.graph.vertex_count;
  report.numeric_rigid = rigid_from_rank(cover.graph, d, report.cover_rank);
  report.dof = (d * n - report.cover_rank) - trivial_motion_count(d, n);

  if (auto symmetry = detect_plane_symmetry(tau)) {
    int comb_rank;
    if (*symmetry == PlaneSymmetry::ThreeFold) {
      comb_rank = 3 * matroid_rank(graph, SparsityParams(2, 3, 1));
    } else {
      comb_rank = matroid_rank(graph, SparsityParams(2, 3, 1)) +
                  matroid_rank(graph, SparsityParams(2, 3, 2));
    }
    report.combinatorial_rank = comb_rank;
    report.combinatorial_rigid = decide_rigid_combinatorial(graph, *symmetry);
    if (comb_rank != report.cover_rank) {
      throw TheoremMismatchError("combinatorial rank " + std::to_string(comb_rank) +
                                 " differs from numeric rank " +
                                 std::to_string(report.cover_rank));
    }
    if (*report.combinatorial_rigid != report.numeric_rigid) {
      throw TheoremMismatchError("combinatorial and numeric rigidity verdicts disagree");
    }
  }
  return report;
}

namespace {

using Mask = std::uint32_t;

std::vector<int> mask_to_ids(Mask mask) {
  std::vector<int> ids;
  for (int e = 0; mask; ++e, mask >>= 1) {
    if (mask & 1u) ids.push_back(e);
  }
  return ids;
}

struct MaskStats {
  int edges = 0;
  int vertices = 0;
  bool connected = false;
};

MaskStats mask_stats(const GainGraph& graph, Mask mask) {
  MaskStats out;
  std::vector<int> vs;
  std::vector<std::pair<int, int>> links;
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (!(mask >> e & 1u)) continue;
    ++out.edges;
    const GainEdge& edge = graph.edges()[e];
    vs.push_back(edge.tail);
    vs.push_back(edge.head);
    links.emplace_back(edge.tail, edge.head);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  out.vertices = static_cast<int>(vs.size());
  std::vector<int> parent(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) parent[i] = static_cast<int>(i);
  auto pos = [&](int v) {
    return static_cast<int>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& [a, b] : links) {
    int ra = find(pos(a));
    int rb = find(pos(b));
    if (ra != rb) parent[ra] = rb;
  }
  int comps = 0;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  }
  out.connected = comps <= 1;
  return out;
}

int require_cyclic(const GainGraph& graph, int min_k) {
  const auto& factors = graph.group().factors();
  if (factors.size() != 1 || factors[0] < min_k) {
    throw ValidationError("analysis requires a cyclic gain group of order >= " +
                          std::to_string(min_k));
  }
  return factors[0];
}

}  // namespace

std::vector<CkViolation> necessary_conditions_ck(const GainGraph& graph) {
  const int k = require_cyclic(graph, 4);
  const AbelianGroup& grp = graph.group();
  std::vector<CkViolation> out;

  SparsityCheck c0 = check_gain_sparse(graph, SparsityParams(2, 3, 0));
  if (!c0.sparse) {
    CkViolation v;
    v.kind = CkViolationKind::AllBlocksSparsity;
    v.witness = c0.witness;
    for (const GroupElement& j : grp.elements()) v.blocks.push_back(j);
    v.description = "(2,3,0) count violated: all blocks lose rank";
    out.push_back(std::move(v));
  }

  SparsityCheck c1 = check_gain_sparse(graph, SparsityParams(2, 3, 1));
  if (!c1.sparse) {
    CkViolation v;
    v.kind = CkViolationKind::TranslationBlocks;
    v.witness = c1.witness;
    v.blocks = {grp.make({1}), grp.make({k - 1})};
    v.description = "(2,3,1) count violated: blocks 1 and k-1 lose rank";
    out.push_back(std::move(v));
  }

  if (k % 2 == 0) {
    // Smallest connected subset whose induced subgroup is {0, k/2} and whose
    // own count breaks |F| <= 2|V(F)| - 2.
    const GroupElement half = grp.make({k / 2});
    const std::vector<GroupElement> z2{grp.identity(), half};
    Mask best_mask = 0;
    int best_size = graph.edge_count() + 1;
    for (Mask mask = 1; mask < (Mask{1} << graph.edge_count()); ++mask) {
      int size = std::popcount(mask);
      if (size >= best_size) continue;
      MaskStats stats = mask_stats(graph, mask);
      if (!stats.connected) continue;
      if (stats.edges <= 2 * stats.vertices - 2) continue;
      if (induced_subgroup(graph, mask_to_ids(mask)) != z2) continue;
      best_mask = mask;
      best_size = size;
    }
    if (best_mask != 0) {
      CkViolation v;
      v.kind = CkViolationKind::HalfTurnSubgroup;
      v.witness = mask_to_ids(best_mask);
      for (int j = 1; j < k; j += 2) v.blocks.push_back(grp.make({j}));
      v.description =
          "(2,3,2) count violated on a subset generating the order-2 subgroup: odd blocks lose rank";
      out.push_back(std::move(v));
    }
  }

  for (const GainEdge& e : graph.edges()) {
    if (!e.is_loop()) continue;
    std::vector<GroupElement> dead;
    for (const GroupElement& j : grp.elements()) {
      if (is_zero_loop(grp, e.gain, j)) dead.push_back(j);
    }
    if (dead.empty()) continue;
    CkViolation v;
    v.kind = CkViolationKind::ZeroLoop;
    v.witness = {e.id};
    v.blocks = std::move(dead);
    v.description = "loop gain " + e.gain.to_string() + " yields a zero row in the listed blocks";
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Condition (iii') of the unbalanced-circuit definition: some vertex v, some
// gamma, and an equivalent labeling that is the identity away from v and lands
// in {id, gamma} on the edges into v.
bool star_normalizable(const GainGraph& graph, const std::vector<int>& edge_ids) {
  const AbelianGroup& grp = graph.group();
  std::set<int> vertex_set;
  for (int id : edge_ids) {
    vertex_set.insert(graph.edges()[id].tail);
    vertex_set.insert(graph.edges()[id].head);
  }

  for (int v : vertex_set) {
    std::vector<int> rest;       // edges avoiding v
    std::vector<int> star;       // non-loop edges at v
    std::vector<GroupElement> loop_gains;
    for (int id : edge_ids) {
      const GainEdge& e = graph.edges()[id];
      if (e.tail == v && e.head == v) {
        loop_gains.push_back(e.gain);
      } else if (e.tail == v || e.head == v) {
        star.push_back(id);
      } else {
        rest.push_back(id);
      }
    }
    if (!is_balanced(graph, rest)) continue;

    // Potentials making `rest` identity, one component at a time; each
    // component keeps a free constant offset.
    std::vector<int> others(vertex_set.begin(), vertex_set.end());
    others.erase(std::remove(others.begin(), others.end(), v), others.end());
    std::vector<int> comp(others.size(), -1);
    std::vector<GroupElement> phi(others.size(), grp.identity());
    auto pos = [&](int u) {
      return static_cast<int>(std::lower_bound(others.begin(), others.end(), u) - others.begin());
    };
    int comp_count = 0;
    for (size_t i = 0; i < others.size(); ++i) {
      if (comp[i] >= 0) continue;
      comp[i] = comp_count;
      std::vector<int> queue{static_cast<int>(i)};
      while (!queue.empty()) {
        int up = queue.back();
        queue.pop_back();
        int u = others[up];
        for (int id : rest) {
          const GainEdge& e = graph.edges()[id];
          if (e.is_loop()) continue;
          int w = -1;
          if (e.tail == u) w = e.head;
          if (e.head == u) w = e.tail;
          if (w < 0) continue;
          int wp = pos(w);
          if (comp[wp] >= 0) continue;
          comp[wp] = comp_count;
          phi[wp] = grp.add(phi[up], graph.gain_from(e, u));
          queue.push_back(wp);
        }
      }
      ++comp_count;
    }

    for (const GroupElement& gamma : grp.elements()) {
      if (gamma.is_identity()) continue;
      bool loops_ok = true;
      for (const GroupElement& lg : loop_gains) {
        if (lg != gamma && grp.negate(lg) != gamma) {
          loops_ok = false;
          break;
        }
      }
      if (!loops_ok) continue;
      // Per component, the offset must place every star gain in {id, gamma}.
      std::vector<std::set<int>> allowed(comp_count);
      bool init = true;
      for (int c = 0; c < comp_count && init; ++c) {
        for (const GroupElement& g : grp.elements()) allowed[c].insert(grp.index_of(g));
      }
      bool feasible = true;
      for (int id : star) {
        const GainEdge& e = graph.edges()[id];
        int x = e.tail == v ? e.head : e.tail;
        int xp = pos(x);
        // Star gain after switching: psi(x->v) + phi(x) - c_comp.
        GroupElement base = grp.add(graph.gain_from(e, x), phi[xp]);
        std::set<int> options{grp.index_of(base), grp.index_of(grp.sub(base, gamma))};
        std::set<int> merged;
        for (int o : options) {
          if (allowed[comp[xp]].count(o)) merged.insert(o);
        }
        allowed[comp[xp]] = std::move(merged);
        if (allowed[comp[xp]].empty()) {
          feasible = false;
          break;
        }
      }
      if (feasible) return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> minimal_sets(std::vector<Mask> masks) {
  std::sort(masks.begin(), masks.end(),
            [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Mask> kept;
  for (Mask m : masks) {
    bool dominated = false;
    for (Mask k : kept) {
      if ((k & m) == k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(m);
  }
  std::vector<std::vector<int>> out;
  for (Mask m : kept) out.push_back(mask_to_ids(m));
  return out;
}

}  // namespace

Circuits find_circuits(const GainGraph& graph) {
  require_cyclic(graph, 2);
  if (graph.edge_count() > 18) {
    throw ValidationError("circuit search is limited to graphs with at most 18 edges");
  }
  Circuits out;
  std::vector<Mask> balanced_hits;
  std::vector<Mask> unbalanced_hits;
  for (Mask mask = 1; mask < (Mask{1} << graph.edge_count()); ++mask) {
    MaskStats stats = mask_stats(graph, mask);
    if (!stats.connected) continue;  // circuits are connected
    std::vector<int> ids = mask_to_ids(mask);
    bool balanced = is_balanced(graph, ids);
    if (balanced) {
      if (stats.edges > 2 * stats.vertices - 3) balanced_hits.push_back(mask);
    } else {
      if (stats.edges > 2 * stats.vertices - 1 && star_normalizable(graph, ids)) {
        unbalanced_hits.push_back(mask);
      }
    }
  }
  out.balanced = minimal_sets(std::move(balanced_hits));
  out.unbalanced = minimal_sets(std::move(unbalanced_hits));
  return out;
}

ProbeReport probe_odd_rotation(const GainGraph& graph, const OrthogonalRep& tau,
                               const std::vector<std::uint64_t>& seeds, double rel_tol) {
  const int k = require_cyclic(graph, 4);
  if (k % 2 == 0) throw ValidationError("probe supports odd rotation orders only");
  if (tau.group() != graph.group()) throw ValidationError("gain graph and tau use different groups");

  CoveringGraph cover = covering_graph(graph);
  ProbeReport report;
  report.k = k;
  report.cover_edges = cover.graph.edge_count();
  report.cover_rank = generic_cover_rank(graph, tau, seeds, rel_tol);
  report.generic_rank = generic_plain_rank(cover.graph, tau.dim(), seeds, rel_tol);
  report.symmetric_rigid = rigid_from_rank(cover.graph, tau.dim(), report.cover_rank);
  report.underlying_rigid = rigid_from_rank(cover.graph, tau.dim(), report.generic_rank);
  report.agreement = report.cover_rank == report.generic_rank;
  return report;
}

}  // namespace orbitrig
