#include <gtest/gtest.h>

#include "gbdp/errors.hpp"
#include "gbdp/model.hpp"
#include "support.hpp"

using namespace gbdp;
using gbdp::testing::Rng;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& rule, const std::string& where) {
  for (const auto& v : vs) {
    if (v.rule == rule && v.where == where) return true;
  }
  return false;
}

// Distinct value per edge so that every matrix entry can be traced back.
TransitionModel labelled_example() {
  std::vector<EdgeProb> edges;
  double value = 0.001;
  for (const auto& e : directed_edges(gbdp::testing::example_shape())) {
    edges.push_back({e.from, e.to, value});
    value += 0.001;
  }
  return TransitionModel(gbdp::testing::example_shape(), edges, NoSelf{}, true);
}

double prob_of(const TransitionModel& m, const State& u, const State& v) {
  for (const auto& e : m.edges()) {
    if (e.from == u && e.to == v) return e.prob;
  }
  return 0.0;
}

}  // namespace

TEST(Model, DirectionalMatrixPlacesEntries) {
  const TransitionModel m = labelled_example();
  const Grid& g = m.grid();
  const Eigen::MatrixXd ph = directional_matrix(m, 1);
  const Eigen::MatrixXd pv = directional_matrix(m, 2);
  // r_{0,0}(1), l_{2,0}(2), u_{2,0}(2)
  EXPECT_EQ(ph(g.index_of({0, 0}), g.index_of({1, 0})), prob_of(m, {0, 0}, {1, 0}));
  EXPECT_EQ(ph(g.index_of({2, 0}), g.index_of({0, 0})), prob_of(m, {2, 0}, {0, 0}));
  EXPECT_EQ(pv(g.index_of({2, 0}), g.index_of({2, 2})), prob_of(m, {2, 0}, {2, 2}));
  EXPECT_EQ(ph(g.index_of({2, 0}), g.index_of({2, 2})), 0.0);
  // Horizontal moves keep the second coordinate; vertical moves keep the first.
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (ph(u, v) != 0.0) {
        EXPECT_EQ(g.coordinate(u, 2), g.coordinate(v, 2));
      }
      if (pv(u, v) != 0.0) {
        EXPECT_EQ(g.coordinate(u, 1), g.coordinate(v, 1));
      }
    }
  }
  EXPECT_EQ((full_matrix(m) - ph - pv).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Model, EmptyModelGivesZeroMatrix) {
  const TransitionModel m(GridShape{{2, 2}, 1, 1}, {}, NoSelf{}, true);
  EXPECT_EQ(directional_matrix(m, 1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(full_matrix(m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Model, OneDimensionalTridiagonal) {
  const TransitionModel m(GridShape{{2}, 1, 1},
                          {{{0}, {1}, 0.5}, {{1}, {0}, 0.3}, {{1}, {2}, 0.7}, {{2}, {1}, 0.4}}, NoSelf{},
                          true);
  Eigen::MatrixXd expected(3, 3);
  expected << 0, 0.5, 0, 0.3, 0, 0.7, 0, 0.4, 0;
  EXPECT_EQ(directional_matrix(m, 1), expected);
}

TEST(Model, SelfOnly) {
  const TransitionModel m(GridShape{{2, 1}, 1, 1}, {}, 0.25);
  EXPECT_EQ(full_matrix(m), 0.25 * Eigen::MatrixXd::Identity(6, 6));
}

TEST(Model, PerStateSelfTable) {
  const TransitionModel m(GridShape{{1}, 1, 1}, {{{0}, {1}, 0.5}, {{1}, {0}, 0.75}},
                          std::vector<double>{0.5, 0.25});
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, 0.5, 0.75, 0.25;
  EXPECT_EQ(full_matrix(m), expected);
  EXPECT_TRUE(validate(m).empty());
  EXPECT_THROW(TransitionModel(GridShape{{1}, 1, 1}, {}, std::vector<double>{0.5}), DomainError);
}

TEST(Model, BadDirection) {
  const TransitionModel m(GridShape{{2, 2}, 1, 1}, {});
  EXPECT_THROW(directional_matrix(m, 0), DomainError);
  EXPECT_THROW(directional_matrix(m, 3), DomainError);
}

TEST(Model, DecompositionIsComplete) {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const auto shape = gbdp::testing::random_shape(rng, 1, 3, 100);
    const TransitionModel m = gbdp::testing::random_absorbing_model(shape, rng);
    Eigen::MatrixXd rest = full_matrix(m) - self_matrix(m);
    for (int d = 1; d <= shape.q(); ++d) rest -= directional_matrix(m, d);
    EXPECT_EQ(rest.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Model, BoundaryZeros) {
  Rng rng(11);
  const GridShape shape{{3, 2}, 2, 2};
  const TransitionModel m = gbdp::testing::random_absorbing_model(shape, rng);
  const Grid& g = m.grid();
  for (int d = 1; d <= 2; ++d) {
    const Eigen::MatrixXd p = directional_matrix(m, d);
    for (std::size_t u = 0; u < g.size(); ++u) {
      double reachable = 0.0;
      for (int s = -2; s <= 2; ++s) {
        if (const auto v = g.shifted(u, d, s); v && s != 0) reachable += p(u, *v);
      }
      EXPECT_DOUBLE_EQ(reachable, p.row(u).sum());
    }
  }
}

TEST(Model, ResidualMassGoesToSink) {
  Rng rng(3);
  const TransitionModel m = gbdp::testing::random_absorbing_model(GridShape{{2, 2}, 1, 1}, rng);
  for (double r : m.residual_mass()) EXPECT_NEAR(r, 0.1, 1e-12);
  EXPECT_TRUE(validate(m).empty());
}

TEST(Model, ValidateMassExceedsOne) {
  const TransitionModel m(GridShape{{1}, 1, 1}, {{{0}, {1}, 1.0}, {{1}, {0}, 1.0}}, 0.01);
  const auto vs = validate(m);
  EXPECT_TRUE(has_violation(vs, "mass exceeds 1", "(0)"));
  EXPECT_EQ(vs.front().message(), "mass exceeds 1 at (0)");
}

TEST(Model, ValidateEdgeExitsGrid) {
  const TransitionModel m(GridShape{{2, 2}, 1, 1}, {{{2, 0}, {3, 0}, 0.5}}, NoSelf{}, true);
  EXPECT_TRUE(has_violation(validate(m), "edge exits grid", "(2,0)->(3,0)"));
}

TEST(Model, ValidateOtherRules) {
  const GridShape shape{{3, 3}, 2, 1};
  const TransitionModel m(shape,
                          {{{0, 0}, {1, 1}, 0.1},
                           {{2, 0}, {0, 0}, 0.1},
                           {{0, 0}, {0, 1}, 0.1},
                           {{0, 0}, {0, 1}, 0.2},
                           {{1, 0}, {2, 0}, 1.5},
                           {{5, 0}, {4, 0}, 0.1}},
                          NoSelf{}, false);
  const auto vs = validate(m);
  EXPECT_TRUE(has_violation(vs, "not a grid edge", "(0,0)->(1,1)"));
  EXPECT_TRUE(has_violation(vs, "jump exceeds l2", "(2,0)->(0,0)"));
  EXPECT_TRUE(has_violation(vs, "duplicate edge", "(0,0)->(0,1)"));
  EXPECT_TRUE(has_violation(vs, "edge starts outside grid", "(5,0)->(4,0)"));
  EXPECT_TRUE(has_violation(vs, "mass below 1 in non-absorbing model", "(3,3)"));
  bool saw_range = false;
  for (const auto& v : vs) saw_range = saw_range || v.rule.find("outside (0,1]") != std::string::npos;
  EXPECT_TRUE(saw_range);
}

TEST(Model, ParametrizedExampleIsWellFormed) {
  Rng rng(5);
  const auto p = gbdp::testing::random_params(gbdp::testing::example_shape(), rng, 0.9, 1.1, 0.01, 0.05);
  const TransitionModel m = build_model(p, NoSelf{}, true);
  EXPECT_TRUE(validate(m).empty());
}
