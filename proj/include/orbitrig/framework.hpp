#pragma once

#include <cstdint>
#include <vector>

#include "orbitrig/gain_graph.hpp"
#include "orbitrig/group.hpp"
#include "orbitrig/matrix.hpp"

namespace orbitrig {

// Joint coordinates for the quotient graph, parallel to GainGraph::vertices().
struct QuotientPlacement {
  int dim = 0;
  std::vector<RVec> coords;
};

// Joint coordinates for a covering (or plain) graph, indexed by vertex id.
struct Placement {
  int dim = 0;
  std::vector<RVec> coords;
};

inline constexpr double kCoincidenceTol = 1e-9;
inline constexpr double kEquivarianceTol = 1e-9;
inline constexpr double kMotionResidualTol = 1e-8;

// Symmetric placement of the covering graph: p(g.v) = tau(g) p~(v). Throws
// ValidationError when two lifted joints coincide (degenerate placement, e.g.
// a joint fixed by a non-trivial symmetry).
Placement lift_placement(const GainGraph& graph, const OrthogonalRep& tau,
                         const QuotientPlacement& placement);

// |E| x d|V| matrix: the row of {u,v} carries p_u - p_v in u's d columns and
// p_v - p_u in v's columns. Entries are real; stored complex so the shared
// rank/kernel path applies.
ComplexMatrix rigidity_matrix(const SimpleGraph& graph, const Placement& placement);

// Infinitesimal rigidity at the given placement: rank d n - d(d+1)/2, with the
// complete-graph clause for n <= d+1 (affinely independent points).
bool is_inf_rigid(const SimpleGraph& graph, const Placement& placement,
                  double rel_tol = kDefaultRankTol);

// Rigidity verdict from an already computed rank (generic placement assumed).
bool rigid_from_rank(const SimpleGraph& graph, int dim, int rank);

// Number of independent trivial motions of n points spanning R^d affinely
// (n > d), with the degenerate small-n values for d = 2.
int trivial_motion_count(int dim, int vertex_count);

// Checks that the rigidity matrix intertwines the edge permutation action
// with the vertex action tensored by tau, for every group element. Throws
// ActionError when the permutations fail to compose as an action.
bool verify_equivariance(const SimpleGraph& graph, const Placement& placement,
                         const GroupAction& action, const OrthogonalRep& tau,
                         double tol = kEquivarianceTol);

// Deterministic pseudo-random quotient coordinates in [1,2)^d.
QuotientPlacement random_symmetric_placement(const GainGraph& graph, const OrthogonalRep& tau,
                                             std::uint64_t seed);

// Placement of a plain graph with coordinates in [1,2)^d; used as the
// asymmetric genericity proxy.
Placement random_plain_placement(int vertex_count, int dim, std::uint64_t seed);

// Rank of the lifted rigidity matrix, required to agree (integer-exactly)
// across all given seeds; disagreement throws GenericityError.
int generic_cover_rank(const GainGraph& graph, const OrthogonalRep& tau,
                       const std::vector<std::uint64_t>& seeds,
                       double rel_tol = kDefaultRankTol);

// Rank of the plain rigidity matrix of a graph across seeds (asymmetric
// placements); disagreement throws GenericityError.
int generic_plain_rank(const SimpleGraph& graph, int dim,
                       const std::vector<std::uint64_t>& seeds,
                       double rel_tol = kDefaultRankTol);

// Largest bilinear edge-constraint residual |<p_u - p_v, m_u - m_v>| of a
// complex vertex motion, indexed like the placement.
double motion_residual(const SimpleGraph& graph, const Placement& placement,
                       const std::vector<CVec>& motion);

}  // namespace orbitrig
