#ifndef GBDP_MODEL_HPP
#define GBDP_MODEL_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gbdp/lattice.hpp"

namespace gbdp {

/// Absolute tolerance for "row sum = 1" checks.
inline constexpr double kMassTolerance = 1e-10;

struct EdgeProb {
  State from;
  State to;
  double prob = 0.0;
};

struct NoSelf {
  bool operator==(const NoSelf&) const = default;
};
/// No self-transitions, one scalar for every state, or a per-state table
/// (indexed by linear state index).
using SelfTransition = std::variant<NoSelf, double, std::vector<double>>;

/*
 * Transition probabilities of a generalized birth-death chain.
 *
 * Edges are kept exactly as given so `validate` can report malformed input
 * (moves that leave the grid, jumps beyond l1/l2, duplicates). Well-formed
 * edges are also scattered into a dense per-state move table so lookups in
 * the numeric code are O(1). When `absorbing` is set, every row deficit
 * 1 - sum_v p(u,v) - self(u) flows to an implicit sink that never appears in
 * any matrix.
 */
class TransitionModel {
 public:
  TransitionModel(GridShape shape, std::vector<EdgeProb> edges, SelfTransition self = NoSelf{},
                  bool absorbing = false);

  const GridShape& shape() const { return grid_->shape(); }
  const Grid& grid() const { return *grid_; }
  const std::vector<EdgeProb>& edges() const { return edges_; }
  const SelfTransition& self() const { return self_; }
  bool absorbing() const { return absorbing_; }

  /// p(u, u + step e_direction); 0 when the move is absent or leaves the grid.
  double move(std::size_t from, int direction, int step) const;
  /// p(u, v) for arbitrary indices; 0 unless u -> v is an admissible move.
  double prob(std::size_t from, std::size_t to) const;
  double self_prob(std::size_t state) const;

  /// Outgoing mass sum_v p(u,v) + self(u).
  double row_mass(std::size_t state) const;
  /// 1 - row_mass(u) for every state (the sink's share when absorbing).
  std::vector<double> residual_mass() const;

 private:
  std::size_t slot(std::size_t from, int direction, int step) const;

  std::shared_ptr<const Grid> grid_;
  std::vector<EdgeProb> edges_;
  SelfTransition self_;
  bool absorbing_ = false;
  int reach_ = 0;
  std::vector<double> moves_;
};

/// P_i: only the moves along coordinate `direction` (1-based).
Eigen::MatrixXd directional_matrix(const TransitionModel& model, int direction);
/// D: diagonal self-transition matrix (zero when the model has none).
Eigen::MatrixXd self_matrix(const TransitionModel& model);
/// P = sum_i P_i + D.
Eigen::MatrixXd full_matrix(const TransitionModel& model);

struct Violation {
  std::string rule;
  std::string where;

  std::string message() const { return rule + " at " + where; }
};

/// Empty iff the model is well formed; violations are data, never thrown.
std::vector<Violation> validate(const TransitionModel& model);

}  // namespace gbdp

#endif  // GBDP_MODEL_HPP
