#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "orbitrig/group.hpp"

namespace orbitrig {

// Undirected simple graph on vertices 0..vertex_count-1. Edges are stored
// normalized with first endpoint < second.
struct SimpleGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int find_edge(int a, int b) const;  // -1 when absent
};

// A group acting on graph vertices: one permutation per group element.
struct GroupAction {
  AbelianGroup group;
  std::vector<std::vector<int>> perms;  // indexed by element index

  int apply(const GroupElement& g, int vertex) const;
  // Throws ActionError unless the permutations form a homomorphic action.
  void validate() const;
  bool is_free() const;
};

struct GainEdge {
  int id;
  int tail;
  int head;
  GroupElement gain;

  bool is_loop() const { return tail == head; }
};

// Gamma-gain graph: directed multigraph with loops, each edge labeled by a
// group element. The orientation only anchors the gains; traversing an edge
// against its stored direction inverts the gain. Loops with identity gain are
// rejected (they cannot arise as quotients of simple graphs under free
// actions, and they would create self-edges in the cover).
class GainGraph {
 public:
  GainGraph(AbelianGroup group, std::vector<int> vertices,
            std::vector<std::tuple<int, int, GroupElement>> edges);

  const AbelianGroup& group() const { return group_; }
  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<GainEdge>& edges() const { return edges_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_vertex(int v) const;
  int vertex_index(int v) const;  // position in vertices(); throws on unknown id

  // Gain seen when traversing the edge out of `from_vertex`.
  GroupElement gain_from(const GainEdge& e, int from_vertex) const;

  std::vector<int> all_edge_ids() const;
  GainGraph with_edges(std::vector<std::tuple<int, int, GroupElement>> edges) const;

 private:
  AbelianGroup group_;
  std::vector<int> vertices_;
  std::vector<GainEdge> edges_;
};

// Switching at `vertex` with gamma: gains of edges directed to the vertex
// gain gamma on the left, edges directed from it lose gamma; loops and
// non-incident edges are unchanged.
GainGraph switched(const GainGraph& graph, int vertex, const GroupElement& gamma);

// True iff every cycle inside F has identity gain sum. Implemented by rooting
// each connected component of F, switching a spanning forest to identity via
// vertex potentials, and checking that every non-forest edge lands on the
// identity.
bool is_balanced(const GainGraph& graph, const std::vector<int>& edge_ids);

// Subgroup of Gamma generated by the cycle gains of F, as a sorted element
// list. F is balanced iff the result is {identity}.
std::vector<GroupElement> induced_subgroup(const GainGraph& graph,
                                           const std::vector<int>& edge_ids);

// Derived graph of a gain graph: vertices Gamma x V(H) with the free action
// g.(h,v) = (g+h,v). Cover vertex id = (group element index) * |V(H)| +
// (vertex position).
struct CoveringGraph {
  AbelianGroup group;
  int quotient_vertex_count = 0;
  SimpleGraph graph;
  std::vector<int> edge_to_quotient;  // cover edge index -> quotient edge id
  GroupAction action;

  int vertex_id(int group_index, int vertex_pos) const {
    return group_index * quotient_vertex_count + vertex_pos;
  }
  int vertex_pos(int cover_vertex) const { return cover_vertex % quotient_vertex_count; }
  int group_index(int cover_vertex) const { return cover_vertex / quotient_vertex_count; }
  std::vector<int> fiber_of_edge(int quotient_edge_id) const;
};

CoveringGraph covering_graph(const GainGraph& graph);

// Quotient of a symmetric simple graph under a free action, choosing the
// lowest vertex id in each orbit as representative.
GainGraph quotient_gain_graph(const SimpleGraph& graph, const GroupAction& action);

// True iff the two gain graphs are related by a vertex relabeling combined
// with switchings. Brute force over vertex bijections with potential
// propagation; intended for graphs with at most ~7 vertices.
bool equivalent_up_to_switching(const GainGraph& a, const GainGraph& b);

}  // namespace orbitrig
