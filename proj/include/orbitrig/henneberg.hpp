#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitrig/gain_graph.hpp"
#include "orbitrig/sparsity.hpp"

namespace orbitrig {

// Adds a new vertex with two non-loop edges into it; parallel new edges must
// carry distinct gains.
struct ZeroExtension {
  int u;
  int v;
  GroupElement gain_u;  // on the edge u -> new vertex
  GroupElement gain_v;  // on the edge v -> new vertex
};

// Subdivides an existing edge (tail -> head, gain g) with a new vertex: the
// replacement edges tail -> new and head -> new carry gains whose difference
// is g. A third edge z -> new is added with a gain keeping every new 2-cycle
// unbalanced.
struct OneExtension {
  int edge_id;
  GroupElement tail_gain;  // on tail -> new; head -> new then carries tail_gain - g
  int z;
  GroupElement z_gain;     // on z -> new
};

// Adds a new vertex joined to an anchor, plus a loop with non-identity gain.
struct LoopOneExtension {
  int anchor;
  GroupElement edge_gain;  // on anchor -> new
  GroupElement loop_gain;  // != identity
};

using Move = std::variant<ZeroExtension, OneExtension, LoopOneExtension>;

// Applies a move, validating its preconditions against the graph. The new
// vertex id is one past the largest existing id.
GainGraph apply_move(const GainGraph& graph, const Move& move);

std::string move_to_string(const Move& move);

struct Reduction {
  Move move;         // re-applying this move to `reduced` restores the input (up to labels)
  GainGraph reduced;
};

// Inverse move at some vertex of degree 2, degree 3, or loop-plus-edge,
// leaving a (2,3,m)-gain-tight graph. Searches all candidate vertices and,
// for inverse 1-extensions, all reconnection pairs. Returns nothing for the
// one-vertex base graphs.
std::optional<Reduction> find_reduction(const GainGraph& graph, int m);

struct GenerationTrace {
  GainGraph graph;
  std::vector<Move> moves;
};

// Random (2,3,m)-gain-tight graph with n vertices, grown from the base graph
// (a single unbalanced loop for m = 1, an edgeless vertex for m = 2) by moves
// drawn uniformly among all currently valid instantiations.
GenerationTrace generate_tight_traced(const AbelianGroup& group, int n, int m,
                                      std::uint64_t seed);
GainGraph generate_tight(const AbelianGroup& group, int n, int m, std::uint64_t seed);

// All (2,3,m)-gain-tight graphs on vertices {1..n} (labeled; no isomorphism
// reduction). Intended for small n.
std::vector<GainGraph> enumerate_tight_graphs(const AbelianGroup& group, int n, int m);

}  // namespace orbitrig
