#include "orbitrig/gain_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "orbitrig/errors.hpp"

namespace orbitrig {

int SimpleGraph::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].first == a && edges[i].second == b) return static_cast<int>(i);
  }
  return -1;
}

int GroupAction::apply(const GroupElement& g, int vertex) const {
  return perms[group.index_of(g)][vertex];
}

void GroupAction::validate() const {
  const int order = group.order();
  if (static_cast<int>(perms.size()) != order) {
    throw ActionError("expected one permutation per group element");
  }
  const size_t n = perms.empty() ? 0 : perms[0].size();
  for (const auto& p : perms) {
    if (p.size() != n) throw ActionError("permutations act on different vertex sets");
    std::vector<bool> seen(n, false);
    for (int img : p) {
      if (img < 0 || img >= static_cast<int>(n) || seen[img]) {
        throw ActionError("group element does not map to a permutation");
      }
      seen[img] = true;
    }
  }
  for (size_t v = 0; v < n; ++v) {
    if (perms[group.index_of(group.identity())][v] != static_cast<int>(v)) {
      throw ActionError("identity element does not act as the identity permutation");
    }
  }
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int ab = group.index_of(group.add(group.element(a), group.element(b)));
      for (size_t v = 0; v < n; ++v) {
        if (perms[a][perms[b][v]] != perms[ab][v]) {
          throw ActionError("permutations do not compose as a group action");
        }
      }
    }
  }
}

bool GroupAction::is_free() const {
  for (int g = 0; g < group.order(); ++g) {
    if (group.element(g).is_identity()) continue;
    for (size_t v = 0; v < perms[g].size(); ++v) {
      if (perms[g][v] == static_cast<int>(v)) return false;
    }
  }
  return true;
}

GainGraph::GainGraph(AbelianGroup group, std::vector<int> vertices,
                     std::vector<std::tuple<int, int, GroupElement>> edges)
    : group_(std::move(group)), vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw ValidationError("duplicate vertex id");
  }
  edges_.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [tail, head, gain] = edges[i];
    if (!has_vertex(tail) || !has_vertex(head)) {
      throw ValidationError("edge endpoint is not a vertex of the graph");
    }
    group_.require(gain);
    if (tail == head && gain.is_identity()) {
      throw ValidationError("loop with identity gain is not allowed");
    }
    edges_.push_back(GainEdge{static_cast<int>(i), tail, head, gain});
  }
}

bool GainGraph::has_vertex(int v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int GainGraph::vertex_index(int v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw ValidationError("unknown vertex id " + std::to_string(v));
  }
  return static_cast<int>(it - vertices_.begin());
}

GroupElement GainGraph::gain_from(const GainEdge& e, int from_vertex) const {
  if (from_vertex == e.tail) return e.gain;
  if (from_vertex == e.head) return group_.negate(e.gain);
  throw ValidationError("vertex is not an endpoint of the edge");
}

std::vector<int> GainGraph::all_edge_ids() const {
  std::vector<int> ids(edges_.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

GainGraph GainGraph::with_edges(std::vector<std::tuple<int, int, GroupElement>> edges) const {
  return GainGraph(group_, vertices_, std::move(edges));
}

GainGraph switched(const GainGraph& graph, int vertex, const GroupElement& gamma) {
  if (!graph.has_vertex(vertex)) {
    throw ValidationError("unknown vertex id " + std::to_string(vertex));
  }
  const AbelianGroup& grp = graph.group();
  grp.require(gamma);
  std::vector<std::tuple<int, int, GroupElement>> edges;
  edges.reserve(graph.edge_count());
  for (const GainEdge& e : graph.edges()) {
    GroupElement g = e.gain;
    if (!e.is_loop()) {
      if (e.head == vertex) g = grp.add(gamma, g);
      if (e.tail == vertex) g = grp.sub(g, gamma);
    }
    edges.emplace_back(e.tail, e.head, g);
  }
  return graph.with_edges(std::move(edges));
}

namespace {

// Vertex potentials from a BFS forest of F: phi(root) = id and
// phi(head) = phi(tail) + gain along tree edges. Equivalent to switching the
// forest gains to the identity. Non-forest edges then carry the cycle gains.
struct ForestScan {
  std::vector<GroupElement> phi;   // per vertex position, defined where visited
  std::vector<bool> visited;      // per vertex position
  std::vector<int> non_forest;    // edge ids off the forest (includes loops)
};

ForestScan scan_forest(const GainGraph& graph, const std::vector<int>& edge_ids) {
  const AbelianGroup& grp = graph.group();
  const int n = graph.vertex_count();
  std::vector<std::vector<int>> incident(n);
  for (int id : edge_ids) {
    const GainEdge& e = graph.edges().at(id);
    if (e.is_loop()) continue;
    incident[graph.vertex_index(e.tail)].push_back(id);
    incident[graph.vertex_index(e.head)].push_back(id);
  }
  ForestScan out;
  out.phi.assign(n, grp.identity());
  out.visited.assign(n, false);
  std::vector<bool> in_forest(graph.edge_count(), false);
  for (int id : edge_ids) {
    const GainEdge& root_edge = graph.edges().at(id);
    int root = graph.vertex_index(root_edge.tail);
    if (out.visited[root]) continue;
    out.visited[root] = true;
    std::vector<int> queue{root};
    while (!queue.empty()) {
      int upos = queue.back();
      queue.pop_back();
      int u = graph.vertices()[upos];
      for (int eid : incident[upos]) {
        const GainEdge& e = graph.edges().at(eid);
        if (in_forest[eid]) continue;
        int w = e.tail == u ? e.head : e.tail;
        int wpos = graph.vertex_index(w);
        if (out.visited[wpos]) continue;
        in_forest[eid] = true;
        out.visited[wpos] = true;
        out.phi[wpos] = grp.add(out.phi[upos], graph.gain_from(e, u));
        queue.push_back(wpos);
      }
    }
  }
  for (int id : edge_ids) {
    if (!in_forest[id]) out.non_forest.push_back(id);
  }
  return out;
}

// Gain of a non-forest edge after the forest has been switched to identity.
GroupElement residual_gain(const GainGraph& graph, const ForestScan& scan, int edge_id) {
  const AbelianGroup& grp = graph.group();
  const GainEdge& e = graph.edges().at(edge_id);
  if (e.is_loop()) return e.gain;
  GroupElement tail_phi = scan.phi[graph.vertex_index(e.tail)];
  GroupElement head_phi = scan.phi[graph.vertex_index(e.head)];
  return grp.add(e.gain, grp.sub(tail_phi, head_phi));
}

}  // namespace

bool is_balanced(const GainGraph& graph, const std::vector<int>& edge_ids) {
  ForestScan scan = scan_forest(graph, edge_ids);
  for (int id : scan.non_forest) {
    if (!residual_gain(graph, scan, id).is_identity()) return false;
  }
  return true;
}

std::vector<GroupElement> induced_subgroup(const GainGraph& graph,
                                           const std::vector<int>& edge_ids) {
  ForestScan scan = scan_forest(graph, edge_ids);
  std::vector<GroupElement> gens;
  for (int id : scan.non_forest) gens.push_back(residual_gain(graph, scan, id));
  return generated_subgroup(graph.group(), gens);
}

CoveringGraph covering_graph(const GainGraph& graph) {
  const AbelianGroup& grp = graph.group();
  const int nv = graph.vertex_count();
  const int order = grp.order();
  CoveringGraph cover;
  cover.group = grp;
  cover.quotient_vertex_count = nv;
  cover.graph.vertex_count = order * nv;

  std::map<std::pair<int, int>, int> edge_index;
  for (const GainEdge& e : graph.edges()) {
    int upos = graph.vertex_index(e.tail);
    int vpos = graph.vertex_index(e.head);
    for (int g = 0; g < order; ++g) {
      int gpsi = grp.index_of(grp.add(grp.element(g), e.gain));
      int a = cover.vertex_id(g, upos);
      int b = cover.vertex_id(gpsi, vpos);
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_index.emplace(std::make_pair(a, b), cover.graph.edge_count());
      if (inserted) {
        cover.graph.edges.emplace_back(a, b);
        cover.edge_to_quotient.push_back(e.id);
      }
    }
  }

  cover.action.group = grp;
  cover.action.perms.resize(order);
  for (int g = 0; g < order; ++g) {
    cover.action.perms[g].resize(cover.graph.vertex_count);
    for (int h = 0; h < order; ++h) {
      int gh = grp.index_of(grp.add(grp.element(g), grp.element(h)));
      for (int v = 0; v < nv; ++v) {
        cover.action.perms[g][cover.vertex_id(h, v)] = cover.vertex_id(gh, v);
      }
    }
  }
  return cover;
}

std::vector<int> CoveringGraph::fiber_of_edge(int quotient_edge_id) const {
  std::vector<int> out;
  for (size_t i = 0; i < edge_to_quotient.size(); ++i) {
    if (edge_to_quotient[i] == quotient_edge_id) out.push_back(static_cast<int>(i));
  }
  return out;
}

GainGraph quotient_gain_graph(const SimpleGraph& graph, const GroupAction& action) {
  action.validate();
  if (!action.is_free()) throw ActionError("action is not free on the vertex set");
  const AbelianGroup& grp = action.group;
  const int n = graph.vertex_count;
  const int order = grp.order();

  std::vector<int> rep(n, -1);          // orbit representative (lowest id)
  std::vector<int> gamma_of(n, -1);     // element index with theta(gamma)(rep) = v
  for (int v = 0; v < n; ++v) {
    if (rep[v] >= 0) continue;
    int lowest = v;
    for (int g = 0; g < order; ++g) lowest = std::min(lowest, action.perms[g][v]);
    for (int g = 0; g < order; ++g) {
      int img = action.perms[g][lowest];
      rep[img] = lowest;
      gamma_of[img] = g;
    }
  }

  std::vector<int> quotient_vertices;
  for (int v = 0; v < n; ++v) {
    if (rep[v] == v) quotient_vertices.push_back(v);
  }

  std::set<std::pair<int, int>> visited;
  std::vector<std::tuple<int, int, GroupElement>> quotient_edges;
  for (const auto& [a, b] : graph.edges) {
    if (visited.count({a, b})) continue;
    std::pair<int, int> best{a, b};
    for (int g = 0; g < order; ++g) {
      int x = action.perms[g][a];
      int y = action.perms[g][b];
      if (x > y) std::swap(x, y);
      visited.insert({x, y});
      best = std::min(best, {x, y});
    }
    auto [x, y] = best;
    GroupElement psi =
        grp.sub(grp.element(gamma_of[y]), grp.element(gamma_of[x]));
    quotient_edges.emplace_back(rep[x], rep[y], psi);
  }
  return GainGraph(grp, quotient_vertices, std::move(quotient_edges));
}

namespace {

// Canonical comparable key for one edge: orientation-normalized endpoints and
// gain (loop gains identified with their inverses).
std::tuple<int, int, int> edge_key(const AbelianGroup& grp, int tail, int head,
                                   const GroupElement& gain) {
  if (tail == head) {
    int gi = grp.index_of(gain);
    int gin = grp.index_of(grp.negate(gain));
    return {tail, head, std::min(gi, gin)};
  }
  if (tail < head) return {tail, head, grp.index_of(gain)};
  return {head, tail, grp.index_of(grp.negate(gain))};
}

std::vector<std::tuple<int, int, int>> switched_key_multiset(
    const GainGraph& g, const std::vector<int>& perm,
    const std::vector<GroupElement>& sigma) {
  const AbelianGroup& grp = g.group();
  std::vector<std::tuple<int, int, int>> keys;
  keys.reserve(g.edge_count());
  for (const GainEdge& e : g.edges()) {
    int ti = g.vertex_index(e.tail);
    int hi = g.vertex_index(e.head);
    GroupElement gain = grp.sub(grp.add(e.gain, sigma[hi]), sigma[ti]);
    keys.push_back(edge_key(grp, perm[ti], perm[hi], gain));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

// For a fixed vertex bijection, search switching potentials component by
// component. Potentials are pinned to the identity at one root per component
// (a constant switch over a component changes nothing).
bool switching_match(const GainGraph& a, const GainGraph& b, const std::vector<int>& perm) {
  const AbelianGroup& grp = a.group();
  const int n = a.vertex_count();
  std::vector<std::vector<int>> incident(n);
  for (const GainEdge& e : a.edges()) {
    if (e.is_loop()) continue;
    incident[a.vertex_index(e.tail)].push_back(e.id);
    incident[a.vertex_index(e.head)].push_back(e.id);
  }
  std::vector<GroupElement> sigma(n, grp.identity());
  std::vector<bool> assigned(n, false);

  std::vector<int> id_perm(b.vertex_count());
  std::iota(id_perm.begin(), id_perm.end(), 0);
  const std::vector<GroupElement> zero_sigma(b.vertex_count(), grp.identity());
  const auto b_keys = switched_key_multiset(b, id_perm, zero_sigma);

  // Candidate sigma values for a newly reached vertex, from matching one of
  // its a-edges against b-edges with the mapped endpoints.
  auto candidates = [&](int upos, int wpos, int a_edge) {
    const GainEdge& e = a.edges().at(a_edge);
    int u = a.vertices()[upos];
    GroupElement g = a.gain_from(e, u);  // oriented u -> w
    std::set<int> out;
    for (const GainEdge& f : b.edges()) {
      if (f.is_loop()) continue;
      int fti = b.vertex_index(f.tail);
      int fhi = b.vertex_index(f.head);
      GroupElement h;
      if (fti == perm[upos] && fhi == perm[wpos]) {
        h = f.gain;
      } else if (fhi == perm[upos] && fti == perm[wpos]) {
        h = grp.negate(f.gain);
      } else {
        continue;
      }
      // want h == g + sigma(w) - sigma(u)
      out.insert(grp.index_of(grp.add(grp.sub(h, g), sigma[upos])));
    }
    return out;
  };

  std::function<bool()> solve = [&]() -> bool {
    // Find an unassigned vertex adjacent to an assigned one.
    int next = -1, via_edge = -1, from = -1;
    for (int v = 0; v < n && next < 0; ++v) {
      if (!assigned[v]) continue;
      for (int eid : incident[v]) {
        const GainEdge& e = a.edges().at(eid);
        int other = a.vertex_index(e.tail) == v ? a.vertex_index(e.head) : a.vertex_index(e.tail);
        if (!assigned[other]) {
          next = other;
          via_edge = eid;
          from = v;
          break;
        }
      }
    }
    if (next < 0) {
      // Root a fresh component (its potential is arbitrary, so one choice
      // suffices), or finish with the full multiset comparison.
      for (int v = 0; v < n; ++v) {
        if (!assigned[v]) {
          assigned[v] = true;
          sigma[v] = grp.identity();
          bool ok = solve();
          assigned[v] = false;
          return ok;
        }
      }
      return switched_key_multiset(a, perm, sigma) == b_keys;
    }
    for (int cand : candidates(from, next, via_edge)) {
      assigned[next] = true;
      sigma[next] = grp.element(cand);
      if (solve()) return true;
      assigned[next] = false;
    }
    return false;
  };
  return solve();
}

}  // namespace

bool equivalent_up_to_switching(const GainGraph& a, const GainGraph& b) {
  if (a.group() != b.group()) return false;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const int n = a.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (switching_match(a, b, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace orbitrig
