#ifndef GBDP_LATTICE_HPP
#define GBDP_LATTICE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gbdp {

/// Coordinates (u_1, ..., u_q) of a grid point.
using State = std::vector<int>;

/*
 * Finite grid {0..n_1} x ... x {0..n_q} together with the jump bounds:
 * a chain may move forward by at most l1 and backward by at most l2 along
 * exactly one coordinate per step.
 */
struct GridShape {
  std::vector<int> dims;
  int l1 = 1;
  int l2 = 1;

  int q() const { return static_cast<int>(dims.size()); }
  int max_jump() const { return l1 > l2 ? l1 : l2; }
  bool symmetric_jumps() const { return l1 == l2; }

  bool operator==(const GridShape&) const = default;
};

/// Throws ShapeError naming the first violated invariant.
void validate_shape(const GridShape& shape);

/// Directions are 1-based (1..q). `step` is signed: positive moves forward.
struct DirectedEdge {
  State from;
  State to;
  int direction = 0;
  int step = 0;

  bool operator==(const DirectedEdge&) const = default;
};

std::string state_label(const State& u);

/*
 * Enumerated state space. Linear indices follow lexicographic order on
 * (u_1, ..., u_q) with the last coordinate varying fastest, so every matrix
 * in the library is laid out like the 2-D listing (0,0),(0,1),...,(n,n).
 *
 * Immutable after construction.
 */
class Grid {
 public:
  explicit Grid(GridShape shape);

  const GridShape& shape() const { return shape_; }
  int q() const { return shape_.q(); }
  std::size_t size() const { return size_; }

  bool contains(const State& u) const;
  std::size_t index_of(const State& u) const;  // throws DomainError if outside
  State state_of(std::size_t index) const;
  int coordinate(std::size_t index, int direction) const;

  /// Index of u + step * e_direction, or nullopt when it leaves the grid.
  std::optional<std::size_t> shifted(std::size_t index, int direction, int step) const;

  /// True if `step` is an admissible jump under (l1, l2).
  bool step_allowed(int step) const;

  /// (direction, step) taking u to v when v - u is a single-axis move of
  /// length at most max(l1, l2); nullopt otherwise.
  std::optional<std::pair<int, int>> edge_between(const State& u, const State& v) const;

  std::string label(std::size_t index) const { return state_label(state_of(index)); }

 private:
  GridShape shape_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Every admissible transition (forward steps up to l1, backward up to l2),
/// sorted by (index of from, index of to).
std::vector<DirectedEdge> directed_edges(const GridShape& shape);

struct GraphMatrices {
  Eigen::MatrixXi adjacency;
  Eigen::MatrixXi laplacian;
};

/// Adjacency and Laplacian (Deg - A) of the undirected jump graph.
GraphMatrices adjacency_and_laplacian(const GridShape& shape);

}  // namespace gbdp

#endif  // GBDP_LATTICE_HPP
