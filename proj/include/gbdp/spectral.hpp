#ifndef GBDP_SPECTRAL_HPP
#define GBDP_SPECTRAL_HPP

#include <vector>

#include <Eigen/Dense>

#include "gbdp/param.hpp"

namespace gbdp {

/*
 * P_i = B A^(i) B^{-1}: B = diag(b) with b = alpha, and A^(i) acts on the
 * i-th coordinate only through the symmetric banded block U^(i) of size
 * n_i + 1, with U^(i)_{r, r+x} = U^(i)_{r+x, r} = Gamma(i, r, x).
 */
struct BlockDecomposition {
  GridShape shape;
  std::vector<double> b;
  std::vector<Eigen::MatrixXd> blocks;  // blocks[i - 1] is U^(i)

  const Eigen::MatrixXd& block(int direction) const { return blocks.at(direction - 1); }
  /// A^(i) on the full state space (copies of U^(i) along the other axes).
  Eigen::MatrixXd expanded(int direction) const;
  /// B A^(i) B^{-1}.
  Eigen::MatrixXd conjugated(int direction) const;
  /// sum_i A^(i): symmetric, non-negative; its Perron vector drives normalization.
  Eigen::MatrixXd summed() const;
};

BlockDecomposition block_decompose(const Parametrization& p);

/// Eigenvalues ascending; eigenvectors are the orthonormal columns, each
/// signed so its first non-negligible component is positive.
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Cyclic Jacobi rotations. Throws DomainError if `u` is not symmetric within tol.
EigenSystem symmetric_eigen(const Eigen::MatrixXd& u, double tol = 1e-12);

/// Binary exponentiation; k = 0 gives the identity.
Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& p, int k);

/// (sum_i P_i)^k from the per-direction eigensystems (tensor-sum eigenvalues).
Eigen::MatrixXd k_step(const Parametrization& p, int k);

/// (sum_i P_i + alpha_self I)^k; alpha_self in [0, 1).
Eigen::MatrixXd k_step_with_self(const Parametrization& p, double alpha_self, int k);

/// Spectral k-step for a model: recovers its parametrization first. Refuses
/// l1 != l2 and per-state self tables (UnsupportedError).
Eigen::MatrixXd k_step(const TransitionModel& model, int k);

}  // namespace gbdp

#endif  // GBDP_SPECTRAL_HPP
