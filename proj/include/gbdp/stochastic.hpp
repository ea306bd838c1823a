#ifndef GBDP_STOCHASTIC_HPP
#define GBDP_STOCHASTIC_HPP

#include <vector>

#include <Eigen/Dense>

#include "gbdp/param.hpp"

namespace gbdp {

struct PerronResult {
  double rho = 0.0;
  Eigen::VectorXd vector;  // strictly positive, sums to 1
  int iterations = 0;
  /// Collatz-Wielandt bracket min/max_i (Mv)_i / v_i per iteration.
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Nonzero pattern strongly connected.
bool is_irreducible(const Eigen::MatrixXd& m);

/*
 * Shifted power iteration on M + eps I (eps = ||M||_inf / 2, which removes
 * periodicity without moving the eigenvectors) with unit-sum renormalization.
 * Stops when successive iterates differ by <= tol in the max norm; at most
 * 100 * n iterations. `start` defaults to the uniform vector.
 */
PerronResult perron(const Eigen::MatrixXd& m, double tol = 1e-13,
                    const Eigen::VectorXd& start = Eigen::VectorXd());

/// Gamma scaled by (1 - alpha_self) / rho, alpha_u = v_0 / v_u, so that the
/// built model plus alpha_self I is stochastic.
Parametrization normalize_stochastic(const Parametrization& p, double alpha_self);

/// Every row sum within [1 - tol, 1 + tol]. Throws DomainError on negative entries.
bool is_stochastic(const Eigen::MatrixXd& p, double tol);

}  // namespace gbdp

#endif  // GBDP_STOCHASTIC_HPP
