#pragma once

#include <optional>
#include <vector>

#include "orbitrig/framework.hpp"
#include "orbitrig/gain_graph.hpp"
#include "orbitrig/group.hpp"
#include "orbitrig/matrix.hpp"

namespace orbitrig {

// Orbit rigidity matrix for one irreducible representation: |E(H)| x d|V(H)|
// complex, rows parallel to the edge list, d columns per vertex. The row of a
// non-loop edge (u,v) with gain psi carries p~(u) - tau(psi) p~(v) in u's
// block and rho_j(psi) (p~(v) - tau(psi)^-1 p~(u)) in v's block; a loop row
// is the sum of the two contributions in its vertex block.
struct OrbitMatrix {
  GroupElement irrep;
  ComplexMatrix mat;
};

OrbitMatrix orbit_matrix(const GainGraph& graph, const OrthogonalRep& tau,
                         const QuotientPlacement& placement, const GroupElement& j);

// A loop row vanishes identically iff rho_j(gain) = -1 and the gain is an
// involution. Decided exactly in integer arithmetic.
bool is_zero_loop(const AbelianGroup& group, const GroupElement& gain, const GroupElement& j);

// |E(H)| minus the number of zero loops for block j.
int nonzero_row_count(const GainGraph& graph, const GroupElement& j);

// Dimension of the block's trivial-motion space: translations t solving
// (rho_j(g) tau(g) - I) t = 0 for all g plus skew-symmetric S solving
// S tau(g) = rho_j(g) tau(g) S for all g. Computed by linear algebra, so it
// applies to any Abelian tau in any dimension.
int trivial_block_dim(const OrthogonalRep& tau, const GroupElement& j);

// Quotient motion vectors spanning the block's trivial subspace at the given
// placement (constant translations and S p~(v) fields).
std::vector<CVec> trivial_motion_basis(const OrthogonalRep& tau, const GroupElement& j,
                                       const QuotientPlacement& placement);

struct BlockRankProfile {
  std::vector<int> ranks;  // indexed by element index of j
  int total = 0;
};

BlockRankProfile block_rank_profile(const GainGraph& graph, const OrthogonalRep& tau,
                                    const QuotientPlacement& placement,
                                    double rel_tol = kDefaultRankTol);

// Per-block ranks agreeing across every seed; disagreement throws
// GenericityError.
BlockRankProfile generic_block_ranks(const GainGraph& graph, const OrthogonalRep& tau,
                                     const std::vector<std::uint64_t>& seeds,
                                     double rel_tol = kDefaultRankTol);

// Cover motion from a quotient kernel vector of block j:
// m(g.v) = rho_j(g) tau(g) m~(v), indexed by cover vertex id.
std::vector<CVec> lift_motion(const GainGraph& graph, const OrthogonalRep& tau,
                              const GroupElement& j, const CVec& quotient_motion);

struct SymmetricFlex {
  CVec quotient_motion;                  // length d |V(H)|, unit norm
  std::vector<CVec> cover_motion;        // complex motion on the cover
  std::vector<RVec> cover_motion_real;   // real infinitesimal flex of the cover
};

// Kernel vector of O_j orthogonal to the trivial subspace, with its lift, or
// nothing when the block is rigid.
std::optional<SymmetricFlex> symmetric_flex(const GainGraph& graph, const OrthogonalRep& tau,
                                            const QuotientPlacement& placement,
                                            const GroupElement& j,
                                            double rel_tol = kDefaultRankTol);

}  // namespace orbitrig
