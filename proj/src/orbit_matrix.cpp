#include "orbitrig/orbit_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "orbitrig/errors.hpp"

namespace orbitrig {

OrbitMatrix orbit_matrix(const GainGraph& graph, const OrthogonalRep& tau,
                         const QuotientPlacement& placement, const GroupElement& j) {
  const AbelianGroup& grp = graph.group();
  if (tau.group() != grp) throw ValidationError("gain graph and tau use different groups");
  grp.require(j);
  const int d = tau.dim();
  if (placement.dim != d || static_cast<int>(placement.coords.size()) != graph.vertex_count()) {
    throw ValidationError("placement does not match the quotient graph");
  }
  ComplexMatrix m(graph.edge_count(), d * graph.vertex_count());
  for (const GainEdge& e : graph.edges()) {
    const int u = graph.vertex_index(e.tail);
    const int v = graph.vertex_index(e.head);
    const Cplx rho = irrep_value(grp, j, e.gain);
    const RealMatrix& t = tau.matrix(e.gain);
    const RealMatrix& tinv = tau.matrix(grp.negate(e.gain));
    const RVec& pu = placement.coords[u];
    const RVec& pv = placement.coords[v];
    RVec tpv = t.apply(pv);
    RVec tipu = tinv.apply(pu);
    for (int k = 0; k < d; ++k) {
      m.at(e.id, u * d + k) += pu[k] - tpv[k];
      m.at(e.id, v * d + k) += rho * (pv[k] - tipu[k]);
    }
  }
  return OrbitMatrix{j, std::move(m)};
}

bool is_zero_loop(const AbelianGroup& group, const GroupElement& gain, const GroupElement& j) {
  group.require(gain);
  group.require(j);
  if (!group.add(gain, gain).is_identity()) return false;
  if (gain.is_identity()) return false;
  // rho_j(gain) = exp(2 pi i N / K) with K the product of the factors; the
  // value is -1 iff 2N = K (mod 2K). Exact in integers.
  long long K = 1;
  for (int k : group.factors()) K *= k;
  long long N = 0;
  for (size_t t = 0; t < group.factors().size(); ++t) {
    int k = group.factors()[t];
    N += static_cast<long long>((gain.coords()[t] * j.coords()[t]) % k) * (K / k);
  }
  return (2 * N) % (2 * K) == K;
}

int nonzero_row_count(const GainGraph& graph, const GroupElement& j) {
  int count = graph.edge_count();
  for (const GainEdge& e : graph.edges()) {
    if (e.is_loop() && is_zero_loop(graph.group(), e.gain, j)) --count;
  }
  return count;
}

namespace {

// Entries of the trivial-motion systems are differences of products of
// validated orthogonal-matrix entries and unit characters; anything below the
// validation scale is construction noise and must not become a pivot.
void snap_noise(ComplexMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (std::abs(m.at(r, c)) < 1e-11) m.at(r, c) = Cplx(0.0, 0.0);
    }
  }
}

// Kernel dimension of the stacked system (rho_j(g) tau(g) - I) t = 0.
std::vector<CVec> translation_solutions(const OrthogonalRep& tau, const GroupElement& j) {
  const AbelianGroup& grp = tau.group();
  const int d = tau.dim();
  ComplexMatrix sys(grp.order() * d, d);
  for (int gi = 0; gi < grp.order(); ++gi) {
    Cplx rho = irrep_value(grp, j, grp.element(gi));
    const RealMatrix& t = tau.matrix_at(gi);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        sys.at(gi * d + r, c) = rho * t.at(r, c) - (r == c ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0));
      }
    }
  }
  snap_noise(sys);
  return kernel_basis(sys, 1e-10);
}

// Kernel of S tau(g) - rho_j(g) tau(g) S = 0 over skew-symmetric S,
// parameterized by the strict upper triangle.
std::vector<ComplexMatrix> rotation_solutions(const OrthogonalRep& tau, const GroupElement& j) {
  const AbelianGroup& grp = tau.group();
  const int d = tau.dim();
  const int nvars = d * (d - 1) / 2;
  if (nvars == 0) return {};
  std::vector<std::pair<int, int>> var_pos;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) var_pos.emplace_back(a, b);

  ComplexMatrix sys(grp.order() * d * d, nvars);
  for (int gi = 0; gi < grp.order(); ++gi) {
    Cplx rho = irrep_value(grp, j, grp.element(gi));
    const RealMatrix& t = tau.matrix_at(gi);
    for (int var = 0; var < nvars; ++var) {
      auto [a, b] = var_pos[var];
      // Basis matrix E with E[a][b] = 1, E[b][a] = -1.
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          Cplx lhs(0.0, 0.0);  // (E tau)[r][c]
          if (r == a) lhs += t.at(b, c);
          if (r == b) lhs -= t.at(a, c);
          Cplx rhs(0.0, 0.0);  // (tau E)[r][c]
          if (c == b) rhs += t.at(r, a);
          if (c == a) rhs -= t.at(r, b);
          sys.at((gi * d + r) * d + c, var) = lhs - rho * rhs;
        }
      }
    }
  }
  snap_noise(sys);
  std::vector<ComplexMatrix> out;
  for (const CVec& sol : kernel_basis(sys, 1e-10)) {
    ComplexMatrix s(d, d);
    for (int var = 0; var < nvars; ++var) {
      auto [a, b] = var_pos[var];
      s.at(a, b) = sol[var];
      s.at(b, a) = -sol[var];
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

int trivial_block_dim(const OrthogonalRep& tau, const GroupElement& j) {
  return static_cast<int>(translation_solutions(tau, j).size() +
                          rotation_solutions(tau, j).size());
}

std::vector<CVec> trivial_motion_basis(const OrthogonalRep& tau, const GroupElement& j,
                                       const QuotientPlacement& placement) {
  const int d = tau.dim();
  const int nv = static_cast<int>(placement.coords.size());
  std::vector<CVec> out;
  for (const CVec& t : translation_solutions(tau, j)) {
    CVec m(static_cast<size_t>(d) * nv);
    for (int v = 0; v < nv; ++v)
      for (int k = 0; k < d; ++k) m[v * d + k] = t[k];
    out.push_back(std::move(m));
  }
  for (const ComplexMatrix& s : rotation_solutions(tau, j)) {
    CVec m(static_cast<size_t>(d) * nv);
    for (int v = 0; v < nv; ++v) {
      for (int r = 0; r < d; ++r) {
        Cplx acc(0.0, 0.0);
        for (int c = 0; c < d; ++c) acc += s.at(r, c) * placement.coords[v][c];
        m[v * d + r] = acc;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

BlockRankProfile block_rank_profile(const GainGraph& graph, const OrthogonalRep& tau,
                                    const QuotientPlacement& placement, double rel_tol) {
  const AbelianGroup& grp = graph.group();
  BlockRankProfile profile;
  profile.ranks.resize(grp.order());
  for (int ji = 0; ji < grp.order(); ++ji) {
    OrbitMatrix o = orbit_matrix(graph, tau, placement, grp.element(ji));
    profile.ranks[ji] = numeric_rank(o.mat, rel_tol);
    profile.total += profile.ranks[ji];
  }
  return profile;
}

BlockRankProfile generic_block_ranks(const GainGraph& graph, const OrthogonalRep& tau,
                                     const std::vector<std::uint64_t>& seeds, double rel_tol) {
  if (seeds.empty()) throw ValidationError("at least one seed is required");
  std::optional<BlockRankProfile> agreed;
  for (std::uint64_t seed : seeds) {
    QuotientPlacement p = random_symmetric_placement(graph, tau, seed);
    BlockRankProfile profile = block_rank_profile(graph, tau, p, rel_tol);
    if (!agreed) {
      agreed = std::move(profile);
    } else if (profile.ranks != agreed->ranks) {
      throw GenericityError("block ranks disagree across seeds");
    }
  }
  return *agreed;
}

std::vector<CVec> lift_motion(const GainGraph& graph, const OrthogonalRep& tau,
                              const GroupElement& j, const CVec& quotient_motion) {
  const AbelianGroup& grp = graph.group();
  const int d = tau.dim();
  const int nv = graph.vertex_count();
  if (quotient_motion.size() != static_cast<size_t>(d) * nv) {
    throw ValidationError("quotient motion has wrong length");
  }
  std::vector<CVec> out(static_cast<size_t>(grp.order()) * nv);
  for (int gi = 0; gi < grp.order(); ++gi) {
    Cplx rho = irrep_value(grp, j, grp.element(gi));
    const RealMatrix& t = tau.matrix_at(gi);
    for (int v = 0; v < nv; ++v) {
      CVec m(d, Cplx(0.0, 0.0));
      for (int r = 0; r < d; ++r) {
        Cplx acc(0.0, 0.0);
        for (int c = 0; c < d; ++c) acc += t.at(r, c) * quotient_motion[v * d + c];
        m[r] = rho * acc;
      }
      out[static_cast<size_t>(gi) * nv + v] = std::move(m);
    }
  }
  return out;
}

std::optional<SymmetricFlex> symmetric_flex(const GainGraph& graph, const OrthogonalRep& tau,
                                            const QuotientPlacement& placement,
                                            const GroupElement& j, double rel_tol) {
  OrbitMatrix o = orbit_matrix(graph, tau, placement, j);
  std::vector<CVec> kernel = kernel_basis(o.mat, rel_tol);
  if (kernel.empty()) return std::nullopt;
  std::vector<CVec> trivial = orthonormalize(trivial_motion_basis(tau, j, placement));

  constexpr double kDeflateTol = 1e-8;
  CVec best;
  double best_norm = kDeflateTol;
  for (CVec cand : kernel) {
    for (const CVec& t : trivial) {
      Cplx c = dot_hermitian(t, cand);
      for (size_t i = 0; i < cand.size(); ++i) cand[i] -= c * t[i];
    }
    double n = vec_norm(cand);
    if (n > best_norm) {
      best_norm = n;
      best = std::move(cand);
    }
  }
  if (best.empty()) return std::nullopt;
  for (Cplx& z : best) z /= best_norm;

  SymmetricFlex flex;
  flex.cover_motion = lift_motion(graph, tau, j, best);
  flex.quotient_motion = std::move(best);
  // Realize a real flex: the larger of the real and imaginary parts.
  double real_norm = 0.0, imag_norm = 0.0;
  for (const CVec& m : flex.cover_motion) {
    for (const Cplx& z : m) {
      real_norm += z.real() * z.real();
      imag_norm += z.imag() * z.imag();
    }
  }
  const bool use_real = real_norm >= imag_norm;
  for (const CVec& m : flex.cover_motion) {
    RVec r(m.size());
    for (size_t k = 0; k < m.size(); ++k) r[k] = use_real ? m[k].real() : m[k].imag();
    flex.cover_motion_real.push_back(std::move(r));
  }
  return flex;
}

}  // namespace orbitrig
