#include <gtest/gtest.h>

#include "gbdp/algebra.hpp"
#include "gbdp/commute.hpp"
#include "gbdp/errors.hpp"
#include "support.hpp"

using namespace gbdp;
using gbdp::testing::Rng;

namespace {

double max_constraint_residual(const TransitionModel& m) {
  double worst = 0.0;
  for (int i = 1; i <= m.grid().q(); ++i) {
    for (int j = i + 1; j <= m.grid().q(); ++j) {
      for (const auto& r : constraint_residuals(m, i, j)) worst = std::max(worst, std::abs(r.residual));
    }
  }
  return worst;
}

bool all_pairs_commute(const TransitionModel& m, double tol) {
  for (int i = 1; i <= m.grid().q(); ++i) {
    for (int j = i + 1; j <= m.grid().q(); ++j) {
      if (!commutes_direct(m, i, j, tol).commutes) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Commute, ParametrizedModelCommutes) {
  Rng rng(1);
  const auto m = build_model(gbdp::testing::random_params(gbdp::testing::example_shape(), rng));
  const auto r = commutes_direct(m, 1, 2);
  EXPECT_TRUE(r.commutes);
  EXPECT_LE(r.max_residual, 1e-12);
  EXPECT_NEAR(r.max_residual, gbdp::testing::max_commutator(m), 0.0);
}

TEST(Commute, ZeroModelCommutes) {
  const TransitionModel m(GridShape{{2, 2}, 1, 1}, {}, NoSelf{}, true);
  const auto r = commutes_direct(m, 1, 2);
  EXPECT_TRUE(r.commutes);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Commute, PerturbedExampleFails) {
  Rng rng(2);
  const auto m = build_model(gbdp::testing::random_params(gbdp::testing::example_shape(), rng));
  auto edges = m.edges();
  edges.front().prob += 0.1;
  const TransitionModel bad(m.shape(), edges);
  EXPECT_FALSE(commutes_direct(bad, 1, 2).commutes);
  EXPECT_GT(max_constraint_residual(bad), 1e-3);
}

TEST(Commute, BadDirections) {
  const TransitionModel m(GridShape{{2, 2}, 1, 1}, {});
  EXPECT_THROW(commutes_direct(m, 1, 1), DomainError);
  EXPECT_THROW(commutes_direct(m, 1, 3), DomainError);
  EXPECT_THROW(constraint_residuals(m, 0, 1), DomainError);
}

TEST(Commute, ExampleHasThirtySixInGridEquations) {
  const TransitionModel m(gbdp::testing::example_shape(), {});
  const auto rs = constraint_residuals(m, 1, 2);
  EXPECT_EQ(rs.size(), 9u * 16u);
  long long in_grid = 0;
  for (const auto& r : rs) in_grid += r.constraint.in_grid;
  EXPECT_EQ(in_grid, 36);
}

TEST(Commute, InGridCountMatchesOrderFormula) {
  for (int m1 = 1; m1 <= 4; ++m1) {
    for (int m2 = 1; m2 <= 4; ++m2) {
      for (int l = 1; l <= std::min({2, m1, m2}); ++l) {
        const GridShape shape{{m1, m2}, l, l};
        const auto rs = constraint_residuals(TransitionModel(shape, {}), 1, 2);
        long long in_grid = 0;
        for (const auto& r : rs) in_grid += r.constraint.in_grid;
        long long expected = 0;
        for (int x = 1; x <= l; ++x) {
          for (int y = 1; y <= l; ++y) expected += 4LL * (m1 + 1 - x) * (m2 + 1 - y);
        }
        EXPECT_EQ(in_grid, expected);
      }
    }
  }
}

TEST(Commute, FamiliesFollowSigns) {
  const auto rs = constraint_residuals(TransitionModel(GridShape{{2, 2}, 1, 1}, {}), 1, 2);
  for (const auto& r : rs) {
    const int a = r.constraint.step_i;
    const int b = r.constraint.step_j;
    const int expected = a > 0 ? (b > 0 ? 1 : 2) : (b > 0 ? 3 : 4);
    EXPECT_EQ(r.constraint.family, expected);
  }
}

TEST(Commute, ParametrizedResidualsVanish) {
  Rng rng(3);
  const auto m = build_model(gbdp::testing::random_params(GridShape{{3, 2, 2}, 2, 2}, rng));
  EXPECT_LE(max_constraint_residual(m), 1e-14);
}

TEST(Commute, ConstantModelInteriorResidualZero) {
  const GridShape shape{{2, 2}, 1, 1};
  std::vector<EdgeProb> edges;
  for (const auto& e : directed_edges(shape)) edges.push_back({e.from, e.to, 0.2});
  const TransitionModel m(shape, edges, NoSelf{}, true);
  for (const auto& r : constraint_residuals(m, 1, 2)) {
    if (r.constraint.base == State{1, 1}) {
      EXPECT_EQ(r.residual, 0.0);
    }
  }
}

TEST(Commute, BoundaryConstraintsAreExactZeros) {
  Rng rng(4);
  const auto m = build_model(gbdp::testing::random_params(gbdp::testing::example_shape(), rng));
  long long zero_terms = 0;
  for (const auto& r : constraint_residuals(m, 1, 2)) {
    if (r.lhs == 0.0 && r.rhs == 0.0) {
      ++zero_terms;
      EXPECT_EQ(r.residual, 0.0);
      EXPECT_FALSE(r.constraint.in_grid);
    }
  }
  EXPECT_GT(zero_terms, 0);
}

TEST(Commute, DescriptorIsReadable) {
  ConstraintDescriptor d{{0, 1}, 1, 2, 2, -1, 2, false};
  EXPECT_EQ(d.describe(), "family 2 at u=(0,1): directions (1,2) steps (2,-1) [boundary]");
}

TEST(Commute, EquivalenceOnRandomModels) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto shape = gbdp::testing::random_shape(rng, 2, 3, 200);
    const auto m = build_model(gbdp::testing::random_params(shape, rng));
    EXPECT_TRUE(all_pairs_commute(m, 1e-12));
    EXPECT_LE(max_constraint_residual(m), 1e-12);
    const auto bad = gbdp::testing::perturbed(m, rng);
    EXPECT_EQ(all_pairs_commute(bad, 1e-12), max_constraint_residual(bad) <= 1e-12);
    EXPECT_FALSE(all_pairs_commute(bad, 1e-12));
  }
}

TEST(Commute, MinorsVanishForParametrizedModel) {
  Rng rng(6);
  const auto m = build_model(gbdp::testing::random_params(gbdp::testing::example_shape(), rng));
  const auto report = rank1_minor_report(m);
  EXPECT_EQ(report.size(), 9u);
  for (const auto& mm : report) EXPECT_LE(mm.max_abs_minor(), 1e-14);
}

TEST(Commute, IdenticalRowsHaveZeroMinors) {
  MinorMatrix mm;
  mm.entries[0] = {0.1, 0.2, 0.3, 0.4};
  mm.entries[1] = mm.entries[0];
  int k = 0;
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      mm.minors[k++] = mm.entries[0][p] * mm.entries[1][q] - mm.entries[0][q] * mm.entries[1][p];
    }
  }
  EXPECT_EQ(mm.max_abs_minor(), 0.0);
}

TEST(Commute, MinorLayoutOfFirstMatrix) {
  // Row 1: r00(1) d11(1) l11(1) u00(1); row 2: r01(1) d01(1) l10(1) u10(1).
  Rng rng(8);
  const auto m = build_model(gbdp::testing::random_params(gbdp::testing::example_shape(), rng));
  const Grid& g = m.grid();
  const auto p = [&](State a, State b) { return m.prob(g.index_of(a), g.index_of(b)); };
  const auto first = rank1_minor_report(m).front();
  EXPECT_EQ(first.corner, (State{0, 0}));
  EXPECT_EQ(first.entries[0][0], p({0, 0}, {1, 0}));
  EXPECT_EQ(first.entries[0][1], p({1, 1}, {1, 0}));
  EXPECT_EQ(first.entries[0][2], p({1, 1}, {0, 1}));
  EXPECT_EQ(first.entries[0][3], p({0, 0}, {0, 1}));
  EXPECT_EQ(first.entries[1][0], p({0, 1}, {1, 1}));
  EXPECT_EQ(first.entries[1][1], p({0, 1}, {0, 0}));
  EXPECT_EQ(first.entries[1][2], p({1, 0}, {0, 0}));
  EXPECT_EQ(first.entries[1][3], p({1, 0}, {1, 1}));
}

TEST(Commute, MinorReportIsTwoDimensional) {
  EXPECT_THROW(rank1_minor_report(TransitionModel(GridShape{{2, 2, 2}, 1, 1}, {})), UnsupportedError);
}

TEST(Commute, AsymmetricBoundsStillChecked) {
  Rng rng(9);
  const auto m = gbdp::testing::random_absorbing_model(GridShape{{2, 2}, 2, 1}, rng);
  const auto r = commutes_direct(m, 1, 2);
  EXPECT_GE(r.max_residual, 0.0);
  EXPECT_EQ(r.commutes, max_constraint_residual(m) <= 1e-12);
}
