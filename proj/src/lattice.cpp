#include "gbdp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "gbdp/errors.hpp"

namespace gbdp {

void validate_shape(const GridShape& shape) {
  if (shape.dims.empty()) throw ShapeError("shape violation: q must be at least 1");
  for (std::size_t i = 0; i < shape.dims.size(); ++i) {
    if (shape.dims[i] < 1) {
      throw ShapeError("shape violation: n_" + std::to_string(i + 1) + " = " +
                       std::to_string(shape.dims[i]) + " must be at least 1");
    }
  }
  if (shape.l1 < 1) throw ShapeError("shape violation: l1 must be at least 1");
  if (shape.l2 < 1) throw ShapeError("shape violation: l2 must be at least 1");
  const int min_dim = *std::min_element(shape.dims.begin(), shape.dims.end());
  if (shape.max_jump() > min_dim) {
    throw ShapeError("shape violation: max(l1, l2) = " + std::to_string(shape.max_jump()) +
                     " exceeds min(n_i) = " + std::to_string(min_dim));
  }
}

std::string state_label(const State& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) os << ',';
    os << u[i];
  }
  os << ')';
  return os.str();
}

Grid::Grid(GridShape shape) : shape_(std::move(shape)) {
  validate_shape(shape_);
  const int q = shape_.q();
  strides_.assign(q, 1);
  for (int i = q - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * (shape_.dims[i + 1] + 1);
  size_ = strides_[0] * (shape_.dims[0] + 1);
}

bool Grid::contains(const State& u) const {
  if (static_cast<int>(u.size()) != q()) return false;
  for (int i = 0; i < q(); ++i) {
    if (u[i] < 0 || u[i] > shape_.dims[i]) return false;
  }
  return true;
}

std::size_t Grid::index_of(const State& u) const {
  if (!contains(u)) throw DomainError("state " + state_label(u) + " is not in the grid");
  std::size_t idx = 0;
  for (int i = 0; i < q(); ++i) idx += strides_[i] * static_cast<std::size_t>(u[i]);
  return idx;
}

State Grid::state_of(std::size_t index) const {
  if (index >= size_) throw DomainError("state index out of range");
  State u(q());
  for (int i = 0; i < q(); ++i) {
    u[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return u;
}

int Grid::coordinate(std::size_t index, int direction) const {
  const int i = direction - 1;
  return static_cast<int>((index / strides_[i]) % (shape_.dims[i] + 1));
}

std::optional<std::size_t> Grid::shifted(std::size_t index, int direction, int step) const {
  const int target = coordinate(index, direction) + step;
  if (target < 0 || target > shape_.dims[direction - 1]) return std::nullopt;
  const auto delta = static_cast<std::ptrdiff_t>(strides_[direction - 1]) * step;
  return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(index) + delta);
}

bool Grid::step_allowed(int step) const {
  if (step > 0) return step <= shape_.l1;
  if (step < 0) return -step <= shape_.l2;
  return false;
}

std::optional<std::pair<int, int>> Grid::edge_between(const State& u, const State& v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  int direction = 0;
  int step = 0;
  for (int i = 0; i < q(); ++i) {
    if (u[i] == v[i]) continue;
    if (direction != 0) return std::nullopt;
    direction = i + 1;
    step = v[i] - u[i];
  }
  if (direction == 0 || std::abs(step) > shape_.max_jump()) return std::nullopt;
  return std::make_pair(direction, step);
}

std::vector<DirectedEdge> directed_edges(const GridShape& shape) {
  const Grid grid(shape);
  std::vector<DirectedEdge> edges;
  std::vector<std::pair<std::size_t, DirectedEdge>> row;
  for (std::size_t u = 0; u < grid.size(); ++u) {
    row.clear();
    const State from = grid.state_of(u);
    for (int d = 1; d <= grid.q(); ++d) {
      for (int s = -shape.l2; s <= shape.l1; ++s) {
        if (s == 0) continue;
        const auto v = grid.shifted(u, d, s);
        if (!v) continue;
        row.emplace_back(*v, DirectedEdge{from, grid.state_of(*v), d, s});
      }
    }
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [idx, e] : row) edges.push_back(std::move(e));
  }
  return edges;
}

GraphMatrices adjacency_and_laplacian(const GridShape& shape) {
  const Grid grid(shape);
  const auto n = static_cast<Eigen::Index>(grid.size());
  GraphMatrices g{Eigen::MatrixXi::Zero(n, n), Eigen::MatrixXi::Zero(n, n)};
  const int reach = shape.max_jump();
  for (std::size_t u = 0; u < grid.size(); ++u) {
    for (int d = 1; d <= grid.q(); ++d) {
      for (int s = -reach; s <= reach; ++s) {
        if (s == 0) continue;
        if (const auto v = grid.shifted(u, d, s)) g.adjacency(u, *v) = 1;
      }
    }
  }
  g.laplacian = -g.adjacency;
  for (Eigen::Index u = 0; u < n; ++u) g.laplacian(u, u) = g.adjacency.row(u).sum();
  return g;
}

}  // namespace gbdp
