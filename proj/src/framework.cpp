#include "orbitrig/framework.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orbitrig/errors.hpp"

namespace orbitrig {

Placement lift_placement(const GainGraph& graph, const OrthogonalRep& tau,
                         const QuotientPlacement& placement) {
  if (tau.group() != graph.group()) throw ValidationError("gain graph and tau use different groups");
  if (static_cast<int>(placement.coords.size()) != graph.vertex_count()) {
    throw ValidationError("placement size does not match the quotient vertex count");
  }
  const AbelianGroup& grp = graph.group();
  const int d = tau.dim();
  if (placement.dim != d) throw ValidationError("placement dimension does not match tau");
  const int nv = graph.vertex_count();

  Placement out;
  out.dim = d;
  out.coords.resize(static_cast<size_t>(grp.order()) * nv);
  for (int g = 0; g < grp.order(); ++g) {
    const RealMatrix& m = tau.matrix_at(g);
    for (int v = 0; v < nv; ++v) {
      if (static_cast<int>(placement.coords[v].size()) != d) {
        throw ValidationError("placement coordinate has wrong dimension");
      }
      out.coords[static_cast<size_t>(g) * nv + v] = m.apply(placement.coords[v]);
    }
  }
  for (size_t i = 0; i < out.coords.size(); ++i) {
    for (size_t j = i + 1; j < out.coords.size(); ++j) {
      double dist2 = 0.0;
      for (int k = 0; k < d; ++k) {
        double diff = out.coords[i][k] - out.coords[j][k];
        dist2 += diff * diff;
      }
      if (std::sqrt(dist2) < kCoincidenceTol) {
        throw ValidationError("degenerate quotient placement: lifted joints coincide");
      }
    }
  }
  return out;
}

ComplexMatrix rigidity_matrix(const SimpleGraph& graph, const Placement& placement) {
  if (static_cast<int>(placement.coords.size()) != graph.vertex_count) {
    throw ValidationError("placement size does not match the vertex count");
  }
  const int d = placement.dim;
  ComplexMatrix m(graph.edge_count(), d * graph.vertex_count);
  for (int e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges[e];
    for (int k = 0; k < d; ++k) {
      double diff = placement.coords[u][k] - placement.coords[v][k];
      m.at(e, u * d + k) = diff;
      m.at(e, v * d + k) = -diff;
    }
  }
  return m;
}

int trivial_motion_count(int dim, int vertex_count) {
  if (vertex_count <= 1) return dim * vertex_count;
  // n points in generic position, n >= 2: translations plus the rotations
  // that move at least one point.
  int span = std::min(dim, vertex_count - 1);
  return dim + (dim * (dim - 1)) / 2 - ((dim - span) * (dim - span - 1)) / 2;
}

bool rigid_from_rank(const SimpleGraph& graph, int dim, int rank) {
  const int n = graph.vertex_count;
  if (n <= 1) return true;
  if (n >= dim + 1 && rank == dim * n - dim * (dim + 1) / 2) return true;
  // Complete graph on affinely independent points.
  if (n <= dim + 1 && graph.edge_count() == n * (n - 1) / 2 && rank == n * (n - 1) / 2) {
    return true;
  }
  return false;
}

bool is_inf_rigid(const SimpleGraph& graph, const Placement& placement, double rel_tol) {
  if (graph.vertex_count <= 1) return true;
  int rank = numeric_rank(rigidity_matrix(graph, placement), rel_tol);
  return rigid_from_rank(graph, placement.dim, rank);
}

namespace {

ComplexMatrix permutation_matrix(const std::vector<int>& perm) {
  ComplexMatrix m(static_cast<int>(perm.size()), static_cast<int>(perm.size()));
  for (size_t j = 0; j < perm.size(); ++j) m.at(perm[j], static_cast<int>(j)) = 1.0;
  return m;
}

}  // namespace

bool verify_equivariance(const SimpleGraph& graph, const Placement& placement,
                         const GroupAction& action, const OrthogonalRep& tau, double tol) {
  action.validate();
  const AbelianGroup& grp = action.group;
  const int d = tau.dim();
  const int n = graph.vertex_count;
  ComplexMatrix r = rigidity_matrix(graph, placement);

  for (int gi = 0; gi < grp.order(); ++gi) {
    const std::vector<int>& vperm = action.perms[gi];
    // Edge permutation induced by the vertex permutation.
    std::vector<int> eperm(graph.edge_count());
    for (int e = 0; e < graph.edge_count(); ++e) {
      auto [u, v] = graph.edges[e];
      int img = graph.find_edge(vperm[u], vperm[v]);
      if (img < 0) throw ActionError("vertex permutation does not preserve the edge set");
      eperm[e] = img;
    }
    // Motion action in vertex-major column layout: (g.m)(v) = tau(g) m(g^-1 v),
    // i.e. the Kronecker product P_V(g) (x) tau(g).
    ComplexMatrix motion_rep(d * n, d * n);
    const RealMatrix& t = tau.matrix_at(gi);
    for (int w = 0; w < n; ++w) {
      int v = vperm[w];
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) motion_rep.at(v * d + k, w * d + l) = t.at(k, l);
      }
    }
    ComplexMatrix lhs = r * motion_rep;
    ComplexMatrix rhs = permutation_matrix(eperm) * r;
    if ((lhs - rhs).max_abs() > tol) return false;
  }
  return true;
}

namespace {

// Platform-independent uniform double in [1,2) from a mt19937_64 draw.
double unit_interval_offset(std::mt19937_64& rng) {
  return 1.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

QuotientPlacement random_symmetric_placement(const GainGraph& graph, const OrthogonalRep& tau,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QuotientPlacement out;
  out.dim = tau.dim();
  out.coords.resize(graph.vertex_count());
  for (int v = 0; v < graph.vertex_count(); ++v) {
    RVec c(out.dim);
    for (int k = 0; k < out.dim; ++k) c[k] = unit_interval_offset(rng);
    out.coords[v] = std::move(c);
  }
  return out;
}

Placement random_plain_placement(int vertex_count, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Placement out;
  out.dim = dim;
  out.coords.resize(vertex_count);
  for (int v = 0; v < vertex_count; ++v) {
    RVec c(dim);
    for (int k = 0; k < dim; ++k) c[k] = unit_interval_offset(rng);
    out.coords[v] = std::move(c);
  }
  return out;
}

int generic_cover_rank(const GainGraph& graph, const OrthogonalRep& tau,
                       const std::vector<std::uint64_t>& seeds, double rel_tol) {
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  CoveringGraph cover = covering_graph(graph);
  int rank = -1;
  for (std::uint64_t seed : seeds) {
    QuotientPlacement q = random_symmetric_placement(graph, tau, seed);
    Placement p = lift_placement(graph, tau, q);
    int r = numeric_rank(rigidity_matrix(cover.graph, p), rel_tol);
    if (rank < 0) {
      rank = r;
    } else if (r != rank) {
      throw GenericityError("cover rank disagrees across seeds (" + std::to_string(rank) +
                            " vs " + std::to_string(r) + ")");
    }
  }
  return rank;
}

int generic_plain_rank(const SimpleGraph& graph, int dim,
                       const std::vector<std::uint64_t>& seeds, double rel_tol) {
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  int rank = -1;
  for (std::uint64_t seed : seeds) {
    Placement p = random_plain_placement(graph.vertex_count, dim, seed);
    int r = numeric_rank(rigidity_matrix(graph, p), rel_tol);
    if (rank < 0) {
      rank = r;
    } else if (r != rank) {
      throw GenericityError("plain rank disagrees across seeds");
    }
  }
  return rank;
}

double motion_residual(const SimpleGraph& graph, const Placement& placement,
                       const std::vector<CVec>& motion) {
  if (static_cast<int>(motion.size()) != graph.vertex_count) {
    throw ValidationError("motion size does not match the vertex count");
  }
  double worst = 0.0;
  for (const auto& [u, v] : graph.edges) {
    Cplx s(0.0, 0.0);
    for (int k = 0; k < placement.dim; ++k) {
      s += (placement.coords[u][k] - placement.coords[v][k]) * (motion[u][k] - motion[v][k]);
    }
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace orbitrig
