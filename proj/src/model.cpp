#include "gbdp/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {

std::string edge_label(const EdgeProb& e) {
  return state_label(e.from) + "->" + state_label(e.to);
}

}  // namespace

TransitionModel::TransitionModel(GridShape shape, std::vector<EdgeProb> edges,
                                 SelfTransition self, bool absorbing)
    : grid_(std::make_shared<const Grid>(std::move(shape))),
      edges_(std::move(edges)),
      self_(std::move(self)),
      absorbing_(absorbing),
      reach_(grid_->shape().max_jump()) {
  if (const auto* table = std::get_if<std::vector<double>>(&self_)) {
    if (table->size() != grid_->size()) {
      throw DomainError("self-transition table has " + std::to_string(table->size()) +
                        " entries, grid has " + std::to_string(grid_->size()) + " states");
    }
  }
  moves_.assign(grid_->size() * grid_->q() * (2 * reach_ + 1), 0.0);
  for (const auto& e : edges_) {
    const auto move = grid_->edge_between(e.from, e.to);
    if (!move || !grid_->step_allowed(move->second)) continue;
    moves_[slot(grid_->index_of(e.from), move->first, move->second)] = e.prob;
  }
}

std::size_t TransitionModel::slot(std::size_t from, int direction, int step) const {
  return (from * grid_->q() + (direction - 1)) * (2 * reach_ + 1) + (step + reach_);
}

double TransitionModel::move(std::size_t from, int direction, int step) const {
  if (step == 0 || std::abs(step) > reach_) return 0.0;
  return moves_[slot(from, direction, step)];
}

double TransitionModel::prob(std::size_t from, std::size_t to) const {
  const auto move = grid_->edge_between(grid_->state_of(from), grid_->state_of(to));
  if (!move) return 0.0;
  return this->move(from, move->first, move->second);
}

double TransitionModel::self_prob(std::size_t state) const {
  if (const auto* alpha = std::get_if<double>(&self_)) return *alpha;
  if (const auto* table = std::get_if<std::vector<double>>(&self_)) return (*table)[state];
  return 0.0;
}

double TransitionModel::row_mass(std::size_t state) const {
  double mass = self_prob(state);
  for (int d = 1; d <= grid_->q(); ++d) {
    for (int s = -reach_; s <= reach_; ++s) mass += move(state, d, s);
  }
  return mass;
}

std::vector<double> TransitionModel::residual_mass() const {
  std::vector<double> out(grid_->size());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = 1.0 - row_mass(u);
  return out;
}

Eigen::MatrixXd directional_matrix(const TransitionModel& model, int direction) {
  const Grid& grid = model.grid();
  if (direction < 1 || direction > grid.q()) {
    throw DomainError("direction " + std::to_string(direction) + " outside 1.." +
                      std::to_string(grid.q()));
  }
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  const int reach = model.shape().max_jump();
  for (std::size_t u = 0; u < grid.size(); ++u) {
    for (int s = -reach; s <= reach; ++s) {
      if (s == 0) continue;
      if (const auto v = grid.shifted(u, direction, s)) p(u, *v) = model.move(u, direction, s);
    }
  }
  return p;
}

Eigen::MatrixXd self_matrix(const TransitionModel& model) {
  const auto n = static_cast<Eigen::Index>(model.grid().size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) d(u, u) = model.self_prob(u);
  return d;
}

Eigen::MatrixXd full_matrix(const TransitionModel& model) {
  Eigen::MatrixXd p = self_matrix(model);
  for (int d = 1; d <= model.grid().q(); ++d) p += directional_matrix(model, d);
  return p;
}

std::vector<Violation> validate(const TransitionModel& model) {
  std::vector<Violation> out;
  const Grid& grid = model.grid();

  std::set<std::pair<State, State>> seen;
  for (const auto& e : model.edges()) {
    const std::string where = edge_label(e);
    if (!seen.emplace(e.from, e.to).second) out.push_back({"duplicate edge", where});
    if (!grid.contains(e.from)) {
      out.push_back({"edge starts outside grid", where});
      continue;
    }
    if (!grid.contains(e.to)) {
      // A single-axis admissible jump that lands outside is a boundary exit.
      bool single_axis = e.to.size() == e.from.size();
      int moved = 0;
      for (std::size_t i = 0; single_axis && i < e.from.size(); ++i) moved += e.from[i] != e.to[i];
      out.push_back({single_axis && moved == 1 ? "edge exits grid" : "not a grid edge", where});
      continue;
    }
    const auto move = grid.edge_between(e.from, e.to);
    if (!move) {
      out.push_back({"not a grid edge", where});
      continue;
    }
    if (!grid.step_allowed(move->second)) {
      out.push_back({"jump exceeds " + std::string(move->second > 0 ? "l1" : "l2"), where});
      continue;
    }
    if (!(e.prob > 0.0 && e.prob <= 1.0)) {
      std::ostringstream os;
      os << "probability " << e.prob << " outside (0,1]";
      out.push_back({os.str(), where});
    }
  }

  for (std::size_t u = 0; u < grid.size(); ++u) {
    const double self = model.self_prob(u);
    if (!(self >= 0.0 && self < 1.0)) {
      out.push_back({"self probability outside [0,1)", grid.label(u)});
    }
  }
  for (std::size_t u = 0; u < grid.size(); ++u) {
    const double mass = model.row_mass(u);
    if (mass > 1.0 + kMassTolerance) {
      out.push_back({"mass exceeds 1", grid.label(u)});
    } else if (!model.absorbing() && mass < 1.0 - kMassTolerance) {
      out.push_back({"mass below 1 in non-absorbing model", grid.label(u)});
    }
  }
  return out;
}

}  // namespace gbdp
