#include "gbdp/commute.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {

void check_pair(const Grid& grid, int i, int j) {
  for (int d : {i, j}) {
    if (d < 1 || d > grid.q()) {
      throw DomainError("direction " + std::to_string(d) + " outside 1.." +
                        std::to_string(grid.q()));
    }
  }
  if (i == j) throw DomainError("commutation of a direction with itself is vacuous");
}

int family_of(int a, int b) {
  if (a > 0) return b > 0 ? 1 : 2;
  return b > 0 ? 3 : 4;
}

// p(from, from + step e_dir), or 0 when `from` is already off-grid.
double hop(const TransitionModel& m, std::optional<std::size_t> from, int dir, int step) {
  return from ? m.move(*from, dir, step) : 0.0;
}

std::optional<std::size_t> shift(const Grid& g, std::optional<std::size_t> from, int dir, int step) {
  return from ? g.shifted(*from, dir, step) : std::nullopt;
}

}  // namespace

std::string ConstraintDescriptor::describe() const {
  std::ostringstream os;
  os << "family " << family << " at u=" << state_label(base) << ": directions (" << dir_i << ","
     << dir_j << ") steps (" << step_i << "," << step_j << ")";
  if (!in_grid) os << " [boundary]";
  return os.str();
}

CommuteResult commutes_direct(const TransitionModel& model, int i, int j, double tol) {
  check_pair(model.grid(), i, j);
  const Eigen::MatrixXd pi = directional_matrix(model, i);
  const Eigen::MatrixXd pj = directional_matrix(model, j);
  const Eigen::MatrixXd c = pi * pj - pj * pi;
  CommuteResult r;
  r.max_residual = c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
  r.commutes = r.max_residual <= tol;
  return r;
}

std::vector<ConstraintResidual> constraint_residuals(const TransitionModel& model, int i, int j) {
  const Grid& grid = model.grid();
  check_pair(grid, i, j);
  const GridShape& shape = grid.shape();

  std::vector<int> steps;
  for (int s = -shape.l2; s <= shape.l1; ++s) {
    if (s != 0) steps.push_back(s);
  }

  std::vector<ConstraintResidual> out;
  out.reserve(grid.size() * steps.size() * steps.size());
  for (std::size_t u = 0; u < grid.size(); ++u) {
    const State base = grid.state_of(u);
    for (int a : steps) {
      for (int b : steps) {
        const auto via_i = grid.shifted(u, i, a);
        const auto via_j = grid.shifted(u, j, b);
        const auto target = shift(grid, via_i, j, b);

        ConstraintResidual r;
        r.constraint = {base, i, j, a, b, family_of(a, b), via_i && via_j && target};
        r.lhs = model.move(u, i, a) * hop(model, via_i, j, b);
        r.rhs = model.move(u, j, b) * hop(model, via_j, i, a);
        r.residual = r.lhs - r.rhs;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

double MinorMatrix::max_abs_minor() const {
  double worst = 0.0;
  for (double m : minors) worst = std::max(worst, std::abs(m));
  return worst;
}

std::vector<MinorMatrix> rank1_minor_report(const TransitionModel& model) {
  const Grid& grid = model.grid();
  if (grid.q() != 2) {
    throw UnsupportedError("rank-1 minor report is defined for 2-D grids only (q = " +
                           std::to_string(grid.q()) + ")");
  }
  const GridShape& shape = grid.shape();
  const int l = std::min(shape.l1, shape.l2);

  std::vector<MinorMatrix> out;
  for (int x = 1; x <= l; ++x) {
    for (int y = 1; y <= l; ++y) {
      for (int c1 = 0; c1 + x <= shape.dims[0]; ++c1) {
        for (int c2 = 0; c2 + y <= shape.dims[1]; ++c2) {
          const std::size_t a = grid.index_of({c1, c2});
          const std::size_t b = grid.index_of({c1 + x, c2});
          const std::size_t c = grid.index_of({c1, c2 + y});
          const std::size_t d = grid.index_of({c1 + x, c2 + y});

          MinorMatrix m;
          m.corner = {c1, c2};
          m.step_1 = x;
          m.step_2 = y;
          m.entries[0] = {model.prob(a, b), model.prob(d, b), model.prob(d, c), model.prob(a, c)};
          m.entries[1] = {model.prob(c, d), model.prob(c, a), model.prob(b, a), model.prob(b, d)};
          int k = 0;
          for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
              m.minors[k++] = m.entries[0][p] * m.entries[1][q] - m.entries[0][q] * m.entries[1][p];
            }
          }
          out.push_back(m);
        }
      }
    }
  }
  return out;
}

}  // namespace gbdp
