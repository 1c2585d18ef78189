#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "orbitrig/errors.hpp"
#include "orbitrig/orbit_matrix.hpp"

using namespace orbitrig;

namespace {

GainGraph cs_three_loops() {
  AbelianGroup z2({2});
  return GainGraph(z2, {1, 2, 3},
                   {{1, 3, z2.make({0})},
                    {1, 2, z2.make({1})},
                    {2, 3, z2.make({0})},
                    {1, 1, z2.make({1})},
                    {2, 2, z2.make({1})},
                    {3, 3, z2.make({1})}});
}

GainGraph c3_prism() {
  AbelianGroup z3({3});
  return GainGraph(z3, {2, 5},
                   {{2, 5, z3.make({0})}, {2, 2, z3.make({1})}, {5, 5, z3.make({1})}});
}

OrthogonalRep rep_for(const AbelianGroup& grp) {
  if (grp.factors() == std::vector<int>{2, 2}) return named_rep(grp, "c2v");
  return named_rep(grp, "rotation");
}

}  // namespace

TEST_CASE("identity block with identity gain reproduces the plain rigidity row") {
  PlaneGroup c3 = standard_plane_rep("c3");
  GainGraph g(c3.group, {1, 2}, {{1, 2, c3.group.make({0})}});
  QuotientPlacement q{2, {{1.25, 1.5}, {1.75, 1.125}}};
  OrbitMatrix o = orbit_matrix(g, c3.rep, q, c3.group.identity());
  CHECK(o.mat.at(0, 0).real() == doctest::Approx(1.25 - 1.75));
  CHECK(o.mat.at(0, 1).real() == doctest::Approx(1.5 - 1.125));
  CHECK(o.mat.at(0, 2).real() == doctest::Approx(1.75 - 1.25));
  CHECK(o.mat.at(0, 3).real() == doctest::Approx(1.125 - 1.5));
  for (int c = 0; c < 4; ++c) CHECK(std::abs(o.mat.at(0, c).imag()) < 1e-15);
}

TEST_CASE("mirror block rows match the printed formula") {
  PlaneGroup cs = standard_plane_rep("cs");
  const RealMatrix& s = cs.rep.matrix(cs.group.make({1}));
  GainGraph g(cs.group, {1, 2}, {{1, 2, cs.group.make({1})}});
  QuotientPlacement q{2, {{1.4, 1.9}, {1.1, 1.3}}};
  OrbitMatrix o = orbit_matrix(g, cs.rep, q, cs.group.make({1}));
  RVec sp2 = s.apply(q.coords[1]);
  RVec sp1 = s.apply(q.coords[0]);  // the reflection is its own inverse
  CHECK(o.mat.at(0, 0).real() == doctest::Approx(q.coords[0][0] - sp2[0]));
  CHECK(o.mat.at(0, 1).real() == doctest::Approx(q.coords[0][1] - sp2[1]));
  CHECK(o.mat.at(0, 2).real() == doctest::Approx(-(q.coords[1][0] - sp1[0])));
  CHECK(o.mat.at(0, 3).real() == doctest::Approx(-(q.coords[1][1] - sp1[1])));
}

TEST_CASE("rotation loop row matches the printed formula") {
  PlaneGroup c3 = standard_plane_rep("c3");
  const AbelianGroup& grp = c3.group;
  GainGraph g(grp, {2}, {{2, 2, grp.make({1})}});
  QuotientPlacement q{2, {{1.3, 1.7}}};
  Cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  OrbitMatrix o = orbit_matrix(g, c3.rep, q, grp.make({1}));
  RVec tp = c3.rep.matrix(grp.make({1})).apply(q.coords[0]);
  RVec tip = c3.rep.matrix(grp.make({2})).apply(q.coords[0]);
  for (int k = 0; k < 2; ++k) {
    Cplx expected = (q.coords[0][k] - tp[k]) + w * (q.coords[0][k] - tip[k]);
    CHECK(std::abs(o.mat.at(0, k) - expected) < 1e-14);
  }
}

TEST_CASE("zero loop predicate") {
  AbelianGroup z2({2});
  CHECK(is_zero_loop(z2, z2.make({1}), z2.make({1})));
  CHECK_FALSE(is_zero_loop(z2, z2.make({1}), z2.make({0})));

  AbelianGroup z3({3});
  CHECK_FALSE(is_zero_loop(z3, z3.make({1}), z3.make({1})));

  AbelianGroup z6({6});
  CHECK(is_zero_loop(z6, z6.make({3}), z6.make({1})));
  CHECK(is_zero_loop(z6, z6.make({3}), z6.make({3})));
  CHECK_FALSE(is_zero_loop(z6, z6.make({3}), z6.make({2})));
  CHECK_FALSE(is_zero_loop(z6, z6.make({2}), z6.make({3})));
}

TEST_CASE("zero loop predicate matches the numeric rows exhaustively") {
  // Every group of order <= 6, every loop gain, every block.
  std::vector<std::vector<int>> groups = {{2}, {3}, {4}, {2, 2}, {5}, {6}, {2, 3}};
  for (const auto& factors : groups) {
    AbelianGroup grp(factors);
    OrthogonalRep tau = rep_for(grp);
    for (const GroupElement& gain : grp.elements()) {
      if (gain.is_identity()) continue;
      GainGraph g(grp, {1}, {{1, 1, gain}});
      QuotientPlacement q = random_symmetric_placement(g, tau, 12345);
      for (const GroupElement& j : grp.elements()) {
        OrbitMatrix o = orbit_matrix(g, tau, q, j);
        double row_max = 0.0;
        for (int c = 0; c < o.mat.cols(); ++c) row_max = std::max(row_max, std::abs(o.mat.at(0, c)));
        CHECK((row_max < 1e-10) == is_zero_loop(grp, gain, j));
      }
    }
  }
}

TEST_CASE("nonzero row counts") {
  GainGraph g = cs_three_loops();
  AbelianGroup z2 = g.group();
  CHECK(nonzero_row_count(g, z2.make({0})) == 6);
  CHECK(nonzero_row_count(g, z2.make({1})) == 3);

  AbelianGroup z5({5});
  GainGraph no_loops(z5, {1, 2}, {{1, 2, z5.make({1})}, {1, 2, z5.make({2})}});
  for (const GroupElement& j : z5.elements()) CHECK(nonzero_row_count(no_loops, j) == 2);
}

TEST_CASE("nonzero row count equals the orbit-size bookkeeping") {
  // n full-size edge orbits plus the halved loop orbits whose involution acts
  // with character +1.
  std::mt19937_64 rng(99);
  std::vector<std::vector<int>> groups = {{2}, {4}, {6}, {2, 2}, {2, 3}};
  for (const auto& factors : groups) {
    AbelianGroup grp(factors);
    for (int trial = 0; trial < 10; ++trial) {
      GainGraph g = testutil::random_gain_graph(grp, 1 + static_cast<int>(rng() % 3),
                                                1 + static_cast<int>(rng() % 6), rng);
      for (const GroupElement& j : grp.elements()) {
        int n_full = 0;
        int m_plus = 0;
        for (const GainEdge& e : g.edges()) {
          bool halved = e.is_loop() && grp.is_involution(e.gain);
          if (!halved) {
            ++n_full;
          } else if (irrep_value(grp, j, e.gain).real() > 0) {
            ++m_plus;
          }
        }
        CHECK(nonzero_row_count(g, j) == n_full + m_plus);
      }
    }
  }
}

TEST_CASE("trivial block dimensions for the plane groups") {
  PlaneGroup cs = standard_plane_rep("cs");
  CHECK(trivial_block_dim(cs.rep, cs.group.make({0})) == 1);
  CHECK(trivial_block_dim(cs.rep, cs.group.make({1})) == 2);

  PlaneGroup c2 = standard_plane_rep("c2");
  CHECK(trivial_block_dim(c2.rep, c2.group.make({0})) == 1);
  CHECK(trivial_block_dim(c2.rep, c2.group.make({1})) == 2);

  PlaneGroup c3 = standard_plane_rep("c3");
  for (int j = 0; j < 3; ++j) CHECK(trivial_block_dim(c3.rep, c3.group.make({j})) == 1);

  PlaneGroup c4 = standard_plane_rep("c4");
  CHECK(trivial_block_dim(c4.rep, c4.group.make({0})) == 1);
  CHECK(trivial_block_dim(c4.rep, c4.group.make({1})) == 1);
  CHECK(trivial_block_dim(c4.rep, c4.group.make({2})) == 0);
  CHECK(trivial_block_dim(c4.rep, c4.group.make({3})) == 1);

  PlaneGroup c2v = standard_plane_rep("c2v");
  CHECK(trivial_block_dim(c2v.rep, c2v.group.make({0, 0})) == 0);
  CHECK(trivial_block_dim(c2v.rep, c2v.group.make({1, 0})) == 1);
  CHECK(trivial_block_dim(c2v.rep, c2v.group.make({0, 1})) == 1);
  CHECK(trivial_block_dim(c2v.rep, c2v.group.make({1, 1})) == 1);

  // The block dimensions always partition the d(d+1)/2 trivial motions.
  for (const auto& name : {"cs", "c2", "c3", "c4", "c5", "c6", "c2v"}) {
    PlaneGroup pg = standard_plane_rep(name);
    int total = 0;
    for (const GroupElement& j : pg.group.elements()) total += trivial_block_dim(pg.rep, j);
    CHECK(total == 3);
  }
}

TEST_CASE("trivial motion vectors lie in every orbit-matrix kernel") {
  std::mt19937_64 rng(3);
  std::vector<std::vector<int>> groups = {{2}, {3}, {4}, {5}, {2, 2}};
  for (const auto& factors : groups) {
    AbelianGroup grp(factors);
    OrthogonalRep tau = rep_for(grp);
    GainGraph g = testutil::random_gain_graph(grp, 2 + static_cast<int>(rng() % 2),
                                              2 + static_cast<int>(rng() % 4), rng);
    QuotientPlacement q = random_symmetric_placement(g, tau, rng());
    for (const GroupElement& j : grp.elements()) {
      OrbitMatrix o = orbit_matrix(g, tau, q, j);
      for (const CVec& t : trivial_motion_basis(tau, j, q)) {
        for (const Cplx& z : o.mat.apply(t)) CHECK(std::abs(z) < 1e-10);
      }
    }
  }
}

TEST_CASE("block rank profiles of the worked examples") {
  SUBCASE("empty edge set") {
    AbelianGroup z4({4});
    OrthogonalRep tau = named_rep(z4, "rotation");
    GainGraph g(z4, {1, 2}, {});
    QuotientPlacement q = random_symmetric_placement(g, tau, 7);
    BlockRankProfile profile = block_rank_profile(g, tau, q);
    for (int r : profile.ranks) CHECK(r == 0);
    CHECK(profile.total == 0);
  }

  SUBCASE("mirror graph with three loops") {
    PlaneGroup cs = standard_plane_rep("cs");
    GainGraph g = cs_three_loops();
    QuotientPlacement q = random_symmetric_placement(g, cs.rep, 11);
    BlockRankProfile profile = block_rank_profile(g, cs.rep, q);
    CHECK(profile.ranks[0] == 5);
    CHECK(profile.ranks[1] == 3);
    CHECK(profile.total == 8);
    Placement p = lift_placement(g, cs.rep, q);
    CHECK(numeric_rank(rigidity_matrix(covering_graph(g).graph, p)) == 8);
  }

  SUBCASE("three-fold prism quotient") {
    PlaneGroup c3 = standard_plane_rep("c3");
    GainGraph g = c3_prism();
    QuotientPlacement q = random_symmetric_placement(g, c3.rep, 11);
    BlockRankProfile profile = block_rank_profile(g, c3.rep, q);
    CHECK(profile.ranks == std::vector<int>{3, 3, 3});
    CHECK(profile.total == 9);
  }
}

TEST_CASE("rank-sum decomposition and conjugate symmetry on random instances") {
  std::mt19937_64 rng(2718);
  std::vector<std::vector<int>> groups = {{2}, {3}, {4}, {5}, {6}, {2, 2}};
  for (int trial = 0; trial < 18; ++trial) {
    AbelianGroup grp(groups[trial % groups.size()]);
    OrthogonalRep tau = rep_for(grp);
    GainGraph g = testutil::random_gain_graph(grp, 1 + static_cast<int>(rng() % 4),
                                              1 + static_cast<int>(rng() % 7), rng);
    QuotientPlacement q = random_symmetric_placement(g, tau, rng());
    BlockRankProfile profile = block_rank_profile(g, tau, q);
    Placement p = lift_placement(g, tau, q);
    int cover_rank = numeric_rank(rigidity_matrix(covering_graph(g).graph, p));
    CHECK(profile.total == cover_rank);
    for (const GroupElement& j : grp.elements()) {
      int ji = grp.index_of(j);
      int jneg = grp.index_of(grp.negate(j));
      CHECK(profile.ranks[ji] == profile.ranks[jneg]);
    }
  }
}

TEST_CASE("block ranks are invariant under switching") {
  std::mt19937_64 rng(41);
  PlaneGroup c4 = standard_plane_rep("c4");
  for (int trial = 0; trial < 10; ++trial) {
    GainGraph g = testutil::random_gain_graph(c4.group, 2 + static_cast<int>(rng() % 3),
                                              2 + static_cast<int>(rng() % 5), rng);
    GainGraph s = g;
    for (int hop = 0; hop < 4; ++hop) {
      int v = s.vertices()[rng() % s.vertices().size()];
      s = switched(s, v, c4.group.element(static_cast<int>(rng() % 4)));
    }
    QuotientPlacement q = random_symmetric_placement(g, c4.rep, rng());
    BlockRankProfile a = block_rank_profile(g, c4.rep, q);
    BlockRankProfile b = block_rank_profile(s, c4.rep, q);
    CHECK(a.ranks == b.ranks);
  }
}

TEST_CASE("every kernel vector lifts to a motion of the cover") {
  std::mt19937_64 rng(1618);
  std::vector<std::vector<int>> groups = {{2}, {3}, {4}, {5}, {2, 2}};
  for (int trial = 0; trial < 15; ++trial) {
    AbelianGroup grp(groups[trial % groups.size()]);
    OrthogonalRep tau = rep_for(grp);
    GainGraph g = testutil::random_gain_graph(grp, 1 + static_cast<int>(rng() % 3),
                                              1 + static_cast<int>(rng() % 5), rng);
    QuotientPlacement q = random_symmetric_placement(g, tau, rng());
    CoveringGraph cover = covering_graph(g);
    Placement p = lift_placement(g, tau, q);
    for (const GroupElement& j : grp.elements()) {
      OrbitMatrix o = orbit_matrix(g, tau, q, j);
      for (const CVec& kv : kernel_basis(o.mat)) {
        std::vector<CVec> lifted = lift_motion(g, tau, j, kv);
        CHECK(motion_residual(cover.graph, p, lifted) < 1e-8);
      }
    }
  }
}

TEST_CASE("symmetric flex extraction") {
  SUBCASE("rigid prism blocks return nothing") {
    PlaneGroup c3 = standard_plane_rep("c3");
    GainGraph g = c3_prism();
    QuotientPlacement q = random_symmetric_placement(g, c3.rep, 23);
    for (const GroupElement& j : c3.group.elements()) {
      CHECK_FALSE(symmetric_flex(g, c3.rep, q, j).has_value());
    }
  }

  SUBCASE("anti-symmetric flex of the mirror graph") {
    PlaneGroup cs = standard_plane_rep("cs");
    GainGraph g = cs_three_loops();
    QuotientPlacement q = random_symmetric_placement(g, cs.rep, 29);
    GroupElement one = cs.group.make({1});
    auto flex = symmetric_flex(g, cs.rep, q, one);
    REQUIRE(flex.has_value());

    CoveringGraph cover = covering_graph(g);
    Placement p = lift_placement(g, cs.rep, q);
    CHECK(motion_residual(cover.graph, p, flex->cover_motion) < 1e-8);

    // Real flex: check the bilinear residual of the real part directly.
    std::vector<CVec> real_motion;
    double norm = 0.0;
    for (const RVec& m : flex->cover_motion_real) {
      CVec c(m.begin(), m.end());
      for (double x : m) norm += x * x;
      real_motion.push_back(std::move(c));
    }
    CHECK(norm > 1e-6);
    CHECK(motion_residual(cover.graph, p, real_motion) < 1e-8);

    // Velocities reverse under the mirror: m(s.v) = -tau(s) m(v).
    const RealMatrix& s = cs.rep.matrix(one);
    for (int v = 0; v < g.vertex_count(); ++v) {
      int sv = cover.vertex_id(1, v);
      for (int k = 0; k < 2; ++k) {
        Cplx expected = -(s.at(k, 0) * flex->cover_motion[v][0] +
                          s.at(k, 1) * flex->cover_motion[v][1]);
        CHECK(std::abs(flex->cover_motion[sv][k] - expected) < 1e-9);
      }
    }

    // The fully symmetric block of this graph is rigid.
    CHECK_FALSE(symmetric_flex(g, cs.rep, q, cs.group.make({0})).has_value());
  }

  SUBCASE("fully symmetric flex of the two-mirror bipartite framework") {
    PlaneGroup c2v = standard_plane_rep("c2v");
    GainGraph g(c2v.group, {1, 5},
                {{1, 5, c2v.group.make({0, 0})},
                 {1, 5, c2v.group.make({0, 1})},
                 {1, 5, c2v.group.make({1, 0})},
                 {1, 5, c2v.group.make({1, 1})}});
    QuotientPlacement q = random_symmetric_placement(g, c2v.rep, 31);
    auto flex = symmetric_flex(g, c2v.rep, q, c2v.group.make({0, 0}));
    REQUIRE(flex.has_value());
    CoveringGraph cover = covering_graph(g);
    Placement p = lift_placement(g, c2v.rep, q);
    CHECK(cover.graph.edge_count() == 16);
    CHECK(motion_residual(cover.graph, p, flex->cover_motion) < 1e-8);
  }
}
