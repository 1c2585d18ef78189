#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitrig/framework.hpp"
#include "orbitrig/gain_graph.hpp"
#include "orbitrig/orbit_matrix.hpp"
#include "orbitrig/sparsity.hpp"

namespace orbitrig {

// The plane point-group classes with a proven combinatorial characterization.
enum class PlaneSymmetry { Mirror, HalfTurn, ThreeFold };

// Classifies a 2-dimensional representation when it falls in a supported
// class (order 2: mirror vs half-turn by determinant; order 3: rotation).
std::optional<PlaneSymmetry> detect_plane_symmetry(const OrthogonalRep& tau);

// Combinatorial rigidity of the covering framework at symmetry-generic
// placements. Mirror/half-turn: |E(H)| >= 2|V(H)|-1 and the (2,3,2)-matroid
// has rank 2|V(H)|-2; three-fold: the (2,3,1)-matroid has rank 2|V(H)|-1.
bool decide_rigid_combinatorial(const GainGraph& graph, PlaneSymmetry symmetry);

struct BlockReport {
  GroupElement irrep;
  int rows = 0;
  int cols = 0;
  int nonzero_rows = 0;
  int rank = 0;
  int trivial_dim = 0;
  bool flex = false;
};

struct RigidityReport {
  std::string group_desc;
  int quotient_vertices = 0;
  int quotient_edges = 0;
  int cover_vertices = 0;
  int cover_edges = 0;
  std::vector<BlockReport> blocks;
  int rank_sum = 0;
  int cover_rank = 0;
  std::optional<int> combinatorial_rank;
  std::optional<bool> combinatorial_rigid;
  bool numeric_rigid = false;
  int dof = 0;
  std::optional<GroupElement> flex_block;  // lowest block carrying a flex
};

// Full first-order analysis: per-block ranks and flexes, cover rank, and the
// combinatorial predictions when the symmetry class supports them. Theorem
// cross-checks are asserted: a combinatorial/numeric mismatch throws
// TheoremMismatchError, and seed disagreement throws GenericityError.
RigidityReport degrees_of_freedom(const GainGraph& graph, const OrthogonalRep& tau,
                                  const std::vector<std::uint64_t>& seeds,
                                  double rel_tol = kDefaultRankTol);

enum class CkViolationKind {
  AllBlocksSparsity,   // (2,3,0) count failure: every block loses rank
  TranslationBlocks,   // (2,3,1) failure: blocks 1 and k-1 lose rank
  HalfTurnSubgroup,    // even k: subset generating Z/2 breaks (2,3,2): odd blocks
  ZeroLoop,            // loop row vanishes in the listed blocks
};

struct CkViolation {
  CkViolationKind kind;
  std::vector<int> witness;            // edge ids
  std::vector<GroupElement> blocks;    // blocks with a predicted rank deficiency
  std::string description;
};

// Necessary conditions for rotational symmetry of order k >= 4. Each reported
// violation predicts a concrete rank deficiency: the witness rows are
// dependent in every listed block.
std::vector<CkViolation> necessary_conditions_ck(const GainGraph& graph);

struct Circuits {
  std::vector<std::vector<int>> balanced;    // minimal balanced count violators
  std::vector<std::vector<int>> unbalanced;  // minimal sets lifting to k edge-disjoint dependencies
};

Circuits find_circuits(const GainGraph& graph);

struct ProbeReport {
  int k = 0;
  int cover_edges = 0;
  int cover_rank = 0;    // at symmetric random placements
  int generic_rank = 0;  // at asymmetric random placements
  bool symmetric_rigid = false;
  bool underlying_rigid = false;
  bool agreement = false;  // cover_rank == generic_rank
};

// Experimental comparison for odd k >= 5; no verdict is asserted as a
// theorem. Rejects k = 3 (covered by the proven characterization) and even k.
ProbeReport probe_odd_rotation(const GainGraph& graph, const OrthogonalRep& tau,
                               const std::vector<std::uint64_t>& seeds,
                               double rel_tol = kDefaultRankTol);

}  // namespace orbitrig
