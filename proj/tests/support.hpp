#ifndef GBDP_TESTS_SUPPORT_HPP
#define GBDP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gbdp/model.hpp"
#include "gbdp/param.hpp"

namespace gbdp::testing {

using Rng = std::mt19937_64;

/// 3x3 grid with jumps up to 2, the running two-dimensional example.
inline GridShape example_shape() { return GridShape{{2, 2}, 2, 2}; }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Parametrization random_params(const GridShape& shape, Rng& rng, double alpha_lo = 0.5,
                                     double alpha_hi = 2.0, double gamma_lo = 0.05,
                                     double gamma_hi = 0.5) {
  Parametrization p;
  p.shape = shape;
  const Grid grid(shape);
  p.alpha.resize(grid.size());
  for (auto& a : p.alpha) a = uniform(rng, alpha_lo, alpha_hi);
  for (const auto& c : edge_classes(shape)) p.gamma[c] = uniform(rng, gamma_lo, gamma_hi);
  return p;
}

inline Parametrization constant_params(const GridShape& shape, double alpha, double gamma) {
  Parametrization p;
  p.shape = shape;
  p.alpha.assign(Grid(shape).size(), alpha);
  for (const auto& c : edge_classes(shape)) p.gamma[c] = gamma;
  return p;
}

/// Shape with q in [q_lo, q_hi], l1 == l2 <= 2 and at most `max_states` states.
inline GridShape random_shape(Rng& rng, int q_lo, int q_hi, std::size_t max_states) {
  for (;;) {
    GridShape s;
    const int q = uniform_int(rng, q_lo, q_hi);
    std::size_t states = 1;
    for (int i = 0; i < q; ++i) {
      s.dims.push_back(uniform_int(rng, 1, 5));
      states *= s.dims.back() + 1;
    }
    if (states > max_states) continue;
    const int l = uniform_int(rng, 1, std::min(2, *std::min_element(s.dims.begin(), s.dims.end())));
    s.l1 = s.l2 = l;
    return s;
  }
}

/// Copy of `model` with `delta` added to the probability of one random edge.
inline TransitionModel perturbed(const TransitionModel& model, Rng& rng, double delta = 0.1) {
  auto edges = model.edges();
  const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(edges.size()) - 1));
  edges[k].prob += delta;
  return TransitionModel(model.shape(), edges, model.self(), model.absorbing());
}

/// Random monotone unit-step path from the origin to `target`.
inline std::vector<State> random_monotone_path(const State& target, Rng& rng) {
  std::vector<int> moves;
  for (std::size_t i = 0; i < target.size(); ++i) moves.insert(moves.end(), target[i], static_cast<int>(i));
  std::shuffle(moves.begin(), moves.end(), rng);
  std::vector<State> path{State(target.size(), 0)};
  for (int d : moves) {
    State next = path.back();
    ++next[d];
    path.push_back(next);
  }
  return path;
}

/// Random probabilities on every admissible directed edge, scaled so each row
/// keeps mass at most 1 (the deficit goes to the sink).
inline TransitionModel random_absorbing_model(const GridShape& shape, Rng& rng) {
  const Grid grid(shape);
  std::vector<EdgeProb> edges;
  for (const auto& e : directed_edges(shape)) edges.push_back({e.from, e.to, uniform(rng, 0.1, 1.0)});
  std::vector<double> mass(grid.size(), 0.0);
  for (const auto& e : edges) mass[grid.index_of(e.from)] += e.prob;
  for (auto& e : edges) e.prob *= 0.9 / mass[grid.index_of(e.from)];
  return TransitionModel(shape, edges, NoSelf{}, true);
}

inline double max_commutator(const TransitionModel& model) {
  double worst = 0.0;
  const int q = model.grid().q();
  for (int i = 1; i <= q; ++i) {
    const Eigen::MatrixXd pi = directional_matrix(model, i);
    for (int j = i + 1; j <= q; ++j) {
      const Eigen::MatrixXd pj = directional_matrix(model, j);
      worst = std::max(worst, (pi * pj - pj * pi).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

inline Eigen::MatrixXd naive_power(const Eigen::MatrixXd& p, int k) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

}  // namespace gbdp::testing

#endif  // GBDP_TESTS_SUPPORT_HPP
