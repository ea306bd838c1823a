#ifndef GBDP_COMMUTE_HPP
#define GBDP_COMMUTE_HPP

#include <array>
#include <string>
#include <vector>

#include "gbdp/model.hpp"

namespace gbdp {

inline constexpr double kCommuteTolerance = 1e-12;

struct CommuteResult {
  bool commutes = false;
  double max_residual = 0.0;
};

/// max-abs(P_i P_j - P_j P_i) against `tol`. Throws DomainError if i == j.
CommuteResult commutes_direct(const TransitionModel& model, int i, int j,
                              double tol = kCommuteTolerance);

/*
 * One bilinear commutation constraint at base state u:
 *
 *   p(u, u+a e_i) p(u+a e_i, u+a e_i+b e_j) = p(u, u+b e_j) p(u+b e_j, u+b e_j+a e_i)
 *
 * with a, b signed steps. The sign pattern picks the family:
 *   1: a>0, b>0    2: a>0, b<0    3: a<0, b>0    4: a<0, b<0
 * `in_grid` is true when all four transitions stay inside the grid.
 */
struct ConstraintDescriptor {
  State base;
  int dir_i = 0;
  int dir_j = 0;
  int step_i = 0;
  int step_j = 0;
  int family = 0;
  bool in_grid = false;

  std::string describe() const;
};

struct ConstraintResidual {
  ConstraintDescriptor constraint;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
};

/// Every base state of the grid, every admissible step pair, all four
/// families. Transitions that leave the grid contribute probability 0.
std::vector<ConstraintResidual> constraint_residuals(const TransitionModel& model, int i, int j);

/*
 * 2-D only. For each rectangle with corners A = c, B = c + x e_1,
 * C = c + y e_2, D = c + x e_1 + y e_2 the 2x4 matrix
 *
 *   [ p(A,B) p(D,B) p(D,C) p(A,C) ]
 *   [ p(C,D) p(C,A) p(B,A) p(B,D) ]
 *
 * whose six 2x2 minors vanish exactly when the rectangle's constraints hold.
 */
struct MinorMatrix {
  State corner;
  int step_1 = 0;
  int step_2 = 0;
  std::array<std::array<double, 4>, 2> entries{};
  std::array<double, 6> minors{};  // column pairs (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)

  double max_abs_minor() const;
};

std::vector<MinorMatrix> rank1_minor_report(const TransitionModel& model);

}  // namespace gbdp

#endif  // GBDP_COMMUTE_HPP
