#include "orbitrig/henneberg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "orbitrig/errors.hpp"

namespace orbitrig {

namespace {

int new_vertex_id(const GainGraph& graph) {
  return graph.vertices().empty() ? 1 : graph.vertices().back() + 1;
}

std::vector<std::tuple<int, int, GroupElement>> edge_tuples(const GainGraph& graph) {
  std::vector<std::tuple<int, int, GroupElement>> out;
  out.reserve(graph.edge_count());
  for (const GainEdge& e : graph.edges()) out.emplace_back(e.tail, e.head, e.gain);
  return out;
}

SparsityParams tight_params(int m) {
  if (m != 1 && m != 2) throw ValidationError("construction moves support m in {1,2}");
  return SparsityParams(2, 3, m);
}

}  // namespace

GainGraph apply_move(const GainGraph& graph, const Move& move) {
  const AbelianGroup& grp = graph.group();
  const int w = new_vertex_id(graph);
  std::vector<int> vertices = graph.vertices();
  vertices.push_back(w);
  auto edges = edge_tuples(graph);

  if (const auto* z = std::get_if<ZeroExtension>(&move)) {
    if (!graph.has_vertex(z->u) || !graph.has_vertex(z->v)) {
      throw ValidationError("0-extension endpoint is not a vertex of the graph");
    }
    grp.require(z->gain_u);
    grp.require(z->gain_v);
    if (z->u == z->v && z->gain_u == z->gain_v) {
      throw ValidationError("0-extension: parallel new edges must carry distinct gains");
    }
    edges.emplace_back(z->u, w, z->gain_u);
    edges.emplace_back(z->v, w, z->gain_v);
  } else if (const auto* o = std::get_if<OneExtension>(&move)) {
    if (o->edge_id < 0 || o->edge_id >= graph.edge_count()) {
      throw ValidationError("1-extension: no such edge");
    }
    if (!graph.has_vertex(o->z)) throw ValidationError("1-extension: unknown third vertex");
    grp.require(o->tail_gain);
    grp.require(o->z_gain);
    const GainEdge& e = graph.edges()[o->edge_id];
    GroupElement head_gain = grp.sub(o->tail_gain, e.gain);
    if (e.tail == e.head && o->tail_gain == head_gain) {
      throw ValidationError("1-extension: subdivided loop produced a balanced 2-cycle");
    }
    if (o->z == e.tail && o->z_gain == o->tail_gain) {
      throw ValidationError("1-extension: third edge makes a balanced 2-cycle with the tail edge");
    }
    if (o->z == e.head && o->z_gain == head_gain) {
      throw ValidationError("1-extension: third edge makes a balanced 2-cycle with the head edge");
    }
    edges.erase(edges.begin() + o->edge_id);
    edges.emplace_back(e.tail, w, o->tail_gain);
    edges.emplace_back(e.head, w, head_gain);
    edges.emplace_back(o->z, w, o->z_gain);
  } else {
    const auto& l = std::get<LoopOneExtension>(move);
    if (!graph.has_vertex(l.anchor)) throw ValidationError("loop-1-extension: unknown anchor");
    grp.require(l.edge_gain);
    grp.require(l.loop_gain);
    if (l.loop_gain.is_identity()) {
      throw ValidationError("loop-1-extension: the new loop gain must not be the identity");
    }
    edges.emplace_back(l.anchor, w, l.edge_gain);
    edges.emplace_back(w, w, l.loop_gain);
  }
  return GainGraph(grp, std::move(vertices), std::move(edges));
}

std::string move_to_string(const Move& move) {
  std::ostringstream out;
  if (const auto* z = std::get_if<ZeroExtension>(&move)) {
    out << "0-ext u=" << z->u << " gain" << z->gain_u.to_string() << " v=" << z->v << " gain"
        << z->gain_v.to_string();
  } else if (const auto* o = std::get_if<OneExtension>(&move)) {
    out << "1-ext edge=" << o->edge_id << " tail-gain" << o->tail_gain.to_string()
        << " z=" << o->z << " gain" << o->z_gain.to_string();
  } else {
    const auto& l = std::get<LoopOneExtension>(move);
    out << "loop-1-ext anchor=" << l.anchor << " gain" << l.edge_gain.to_string() << " loop-gain"
        << l.loop_gain.to_string();
  }
  return out.str();
}

namespace {

struct VertexIncidence {
  std::vector<int> loops;
  std::vector<int> nonloops;
};

VertexIncidence incidence_at(const GainGraph& graph, int v) {
  VertexIncidence inc;
  for (const GainEdge& e : graph.edges()) {
    if (e.is_loop()) {
      if (e.tail == v) inc.loops.push_back(e.id);
    } else if (e.tail == v || e.head == v) {
      inc.nonloops.push_back(e.id);
    }
  }
  return inc;
}

GainGraph without_vertex(const GainGraph& graph, int v,
                         std::optional<std::tuple<int, int, GroupElement>> extra_edge) {
  std::vector<int> vertices;
  for (int u : graph.vertices()) {
    if (u != v) vertices.push_back(u);
  }
  std::vector<std::tuple<int, int, GroupElement>> edges;
  for (const GainEdge& e : graph.edges()) {
    if (e.tail == v || e.head == v) continue;
    edges.emplace_back(e.tail, e.head, e.gain);
  }
  if (extra_edge) edges.push_back(*extra_edge);
  return GainGraph(graph.group(), std::move(vertices), std::move(edges));
}

}  // namespace

std::optional<Reduction> find_reduction(const GainGraph& graph, int m) {
  const SparsityParams params = tight_params(m);
  if (!is_tight(graph, params)) {
    throw ValidationError("find_reduction requires a (2,3,m)-gain-tight graph");
  }
  if (graph.vertex_count() <= 1) return std::nullopt;
  const AbelianGroup& grp = graph.group();

  for (int v : graph.vertices()) {
    VertexIncidence inc = incidence_at(graph, v);

    if (inc.loops.empty() && inc.nonloops.size() == 2) {
      const GainEdge& e1 = graph.edges()[inc.nonloops[0]];
      const GainEdge& e2 = graph.edges()[inc.nonloops[1]];
      int u1 = e1.tail == v ? e1.head : e1.tail;
      int u2 = e2.tail == v ? e2.head : e2.tail;
      Move move = ZeroExtension{u1, u2, graph.gain_from(e1, u1), graph.gain_from(e2, u2)};
      GainGraph reduced = without_vertex(graph, v, std::nullopt);
      if (is_tight(reduced, params)) return Reduction{move, std::move(reduced)};
    }

    if (inc.loops.size() == 1 && inc.nonloops.size() == 1) {
      const GainEdge& conn = graph.edges()[inc.nonloops[0]];
      const GainEdge& loop = graph.edges()[inc.loops[0]];
      int anchor = conn.tail == v ? conn.head : conn.tail;
      Move move = LoopOneExtension{anchor, graph.gain_from(conn, anchor), loop.gain};
      GainGraph reduced = without_vertex(graph, v, std::nullopt);
      if (is_tight(reduced, params)) return Reduction{move, std::move(reduced)};
    }

    if (inc.loops.empty() && inc.nonloops.size() == 3) {
      // Inverse 1-extension: reconnect one pair of neighbors with the gain
      // difference, the third edge becomes the free edge of the move.
      for (int i = 0; i < 3; ++i) {
        for (int jj = i + 1; jj < 3; ++jj) {
          const GainEdge& ei = graph.edges()[inc.nonloops[i]];
          const GainEdge& ej = graph.edges()[inc.nonloops[jj]];
          int k = 3 - i - jj;
          const GainEdge& ek = graph.edges()[inc.nonloops[k]];
          int ai = ei.tail == v ? ei.head : ei.tail;
          int aj = ej.tail == v ? ej.head : ej.tail;
          int ak = ek.tail == v ? ek.head : ek.tail;
          GroupElement gi = graph.gain_from(ei, ai);
          GroupElement gj = graph.gain_from(ej, aj);
          GroupElement gk = graph.gain_from(ek, ak);
          GroupElement restored = grp.sub(gi, gj);
          if (ai == aj && restored.is_identity()) continue;
          GainGraph reduced = without_vertex(graph, v, std::make_tuple(ai, aj, restored));
          if (!is_tight(reduced, params)) continue;
          Move move = OneExtension{reduced.edge_count() - 1, gi, ak, gk};
          return Reduction{move, std::move(reduced)};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<Move> valid_moves(const GainGraph& graph) {
  const AbelianGroup& grp = graph.group();
  const auto elems = grp.elements();
  std::vector<Move> moves;

  for (size_t ui = 0; ui < graph.vertices().size(); ++ui) {
    for (size_t vi = ui; vi < graph.vertices().size(); ++vi) {
      int u = graph.vertices()[ui];
      int v = graph.vertices()[vi];
      for (size_t a = 0; a < elems.size(); ++a) {
        size_t b0 = (u == v) ? a + 1 : 0;
        for (size_t b = b0; b < elems.size(); ++b) {
          moves.push_back(ZeroExtension{u, v, elems[a], elems[b]});
        }
      }
    }
  }

  for (const GainEdge& e : graph.edges()) {
    for (const GroupElement& tail_gain : elems) {
      GroupElement head_gain = grp.sub(tail_gain, e.gain);
      if (e.tail == e.head && tail_gain == head_gain) continue;
      for (int z : graph.vertices()) {
        for (const GroupElement& z_gain : elems) {
          if (z == e.tail && z_gain == tail_gain) continue;
          if (z == e.head && z_gain == head_gain) continue;
          moves.push_back(OneExtension{e.id, tail_gain, z, z_gain});
        }
      }
    }
  }

  for (int anchor : graph.vertices()) {
    for (const GroupElement& edge_gain : elems) {
      for (const GroupElement& loop_gain : elems) {
        if (loop_gain.is_identity()) continue;
        moves.push_back(LoopOneExtension{anchor, edge_gain, loop_gain});
      }
    }
  }
  return moves;
}

}  // namespace

GenerationTrace generate_tight_traced(const AbelianGroup& group, int n, int m,
                                      std::uint64_t seed) {
  const SparsityParams params = tight_params(m);
  if (n < 1) throw ValidationError("vertex count must be >= 1");
  if (group.order() < 2) throw ValidationError("construction requires a non-trivial group");
  std::mt19937_64 rng(seed);

  GainGraph graph = [&]() {
    if (m == 2) return GainGraph(group, {1}, {});
    int idx = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(group.order() - 1));
    return GainGraph(group, {1}, {{1, 1, group.element(idx)}});
  }();

  GenerationTrace trace{graph, {}};
  while (trace.graph.vertex_count() < n) {
    std::vector<Move> moves = valid_moves(trace.graph);
    if (moves.empty()) throw Error("no valid construction move available");
    const Move& move = moves[rng() % moves.size()];
    GainGraph next = apply_move(trace.graph, move);
    if (!is_tight(next, params)) {
      throw Error("construction move failed to preserve tightness: " + move_to_string(move));
    }
    trace.moves.push_back(move);
    trace.graph = std::move(next);
  }
  return trace;
}

GainGraph generate_tight(const AbelianGroup& group, int n, int m, std::uint64_t seed) {
  return generate_tight_traced(group, n, m, seed).graph;
}

std::vector<GainGraph> enumerate_tight_graphs(const AbelianGroup& group, int n, int m) {
  const SparsityParams params = tight_params(m);
  std::vector<int> vertices(n);
  for (int i = 0; i < n; ++i) vertices[i] = i + 1;

  std::vector<std::tuple<int, int, GroupElement>> candidates;
  for (int u = 1; u <= n; ++u) {
    for (int v = u + 1; v <= n; ++v) {
      for (const GroupElement& g : group.elements()) candidates.emplace_back(u, v, g);
    }
  }
  for (int v = 1; v <= n; ++v) {
    for (const GroupElement& g : group.elements()) {
      if (g.is_identity()) continue;
      if (group.index_of(g) > group.index_of(group.negate(g))) continue;  // loop gain ~ inverse
      candidates.emplace_back(v, v, g);
    }
  }

  const int target = 2 * n - m;
  std::vector<GainGraph> out;
  std::vector<int> pick;
  std::function<void(int)> recurse = [&](int start) {
    if (static_cast<int>(pick.size()) == target) {
      std::vector<std::tuple<int, int, GroupElement>> edges;
      for (int idx : pick) edges.push_back(candidates[idx]);
      GainGraph g(group, vertices, std::move(edges));
      if (is_tight(g, params)) out.push_back(std::move(g));
      return;
    }
    int need = target - static_cast<int>(pick.size());
    for (int idx = start; idx + need <= static_cast<int>(candidates.size()); ++idx) {
      pick.push_back(idx);
      recurse(idx + 1);
      pick.pop_back();
    }
  };
  if (target >= 0) recurse(0);
  return out;
}

}  // namespace orbitrig
