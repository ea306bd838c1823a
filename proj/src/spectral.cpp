#include "gbdp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiThreshold = 1e-13;

void refuse_asymmetric_jumps(const GridShape& shape) {
  if (!shape.symmetric_jumps()) {
    throw UnsupportedError(
        "spectral method requires l1 == l2: with l1 = " + std::to_string(shape.l1) +
        " and l2 = " + std::to_string(shape.l2) +
        " the directional blocks are not symmetric; use the matrix power method");
  }
}

Eigen::MatrixXd spectral_power(const Parametrization& p, double shift, int k) {
  if (k < 0) throw DomainError("step count must be non-negative");
  const BlockDecomposition bd = block_decompose(p);
  const Grid grid(p.shape);
  const int q = grid.q();

  std::vector<EigenSystem> systems;
  systems.reserve(q);
  for (const auto& u : bd.blocks) systems.push_back(symmetric_eigen(u));

  // Eigen multi-indices reuse the grid's own index layout (block i has n_i + 1 modes).
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd w(n, n);
  Eigen::VectorXd powered(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double lambda = shift;
    for (int d = 1; d <= q; ++d) lambda += systems[d - 1].eigenvalues(grid.coordinate(r, d));
    powered(r) = std::pow(lambda, k);
    for (Eigen::Index u = 0; u < n; ++u) {
      double prod = 1.0;
      for (int d = 1; d <= q; ++d) {
        prod *= systems[d - 1].eigenvectors(grid.coordinate(u, d), grid.coordinate(r, d));
      }
      w(u, r) = prod;
    }
  }

  Eigen::MatrixXd out = w * powered.asDiagonal() * w.transpose();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) out(u, v) *= bd.b[u] / bd.b[v];
  }
  return out;
}

}  // namespace

Eigen::MatrixXd BlockDecomposition::expanded(int direction) const {
  const Grid grid(shape);
  const auto n = static_cast<Eigen::Index>(grid.size());
  const Eigen::MatrixXd& u = block(direction);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const int r = grid.coordinate(s, direction);
    for (int r2 = 0; r2 < u.rows(); ++r2) {
      if (r2 == r || u(r, r2) == 0.0) continue;
      a(s, *grid.shifted(s, direction, r2 - r)) = u(r, r2);
    }
  }
  return a;
}

Eigen::MatrixXd BlockDecomposition::conjugated(int direction) const {
  Eigen::MatrixXd a = expanded(direction);
  for (Eigen::Index u = 0; u < a.rows(); ++u) {
    for (Eigen::Index v = 0; v < a.cols(); ++v) a(u, v) *= b[u] / b[v];
  }
  return a;
}

Eigen::MatrixXd BlockDecomposition::summed() const {
  Eigen::MatrixXd m = expanded(1);
  for (int d = 2; d <= shape.q(); ++d) m += expanded(d);
  return m;
}

BlockDecomposition block_decompose(const Parametrization& p) {
  refuse_asymmetric_jumps(p.shape);
  validate_parametrization(p);
  BlockDecomposition bd;
  bd.shape = p.shape;
  bd.b = p.alpha;
  for (int d = 1; d <= p.shape.q(); ++d) {
    const int size = p.shape.dims[d - 1] + 1;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(size, size);
    for (const auto& [c, g] : p.gamma) {
      if (c.direction != d) continue;
      u(c.offset, c.offset + c.step) = g;
      u(c.offset + c.step, c.offset) = g;
    }
    bd.blocks.push_back(std::move(u));
  }
  return bd;
}

EigenSystem symmetric_eigen(const Eigen::MatrixXd& input, double tol) {
  if (input.rows() != input.cols()) throw DomainError("eigensolver needs a square matrix");
  const Eigen::Index n = input.rows();
  const double asym = n ? (input - input.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > tol) throw DomainError("eigensolver input is not symmetric");

  Eigen::MatrixXd a = 0.5 * (input + input.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > kJacobiThreshold * scale) {
    if (++sweep > kMaxSweeps) throw ConvergenceError("Jacobi iteration did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        // Rotation zeroing a(p,q): t = tan(theta), smaller root for stability.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.eigenvalues(k) = a(order[k], order[k]);
    Eigen::VectorXd col = v.col(order[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
    es.eigenvectors.col(k) = col;
  }
  return es;
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& p, int k) {
  if (p.rows() != p.cols()) throw DomainError("matrix power needs a square matrix");
  if (k < 0) throw DomainError("step count must be non-negative");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(p.rows(), p.cols());
  Eigen::MatrixXd base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Eigen::MatrixXd k_step(const Parametrization& p, int k) { return spectral_power(p, 0.0, k); }

Eigen::MatrixXd k_step_with_self(const Parametrization& p, double alpha_self, int k) {
  if (!(alpha_self >= 0.0 && alpha_self < 1.0)) {
    throw DomainError("self-transition probability must lie in [0, 1)");
  }
  return spectral_power(p, alpha_self, k);
}

Eigen::MatrixXd k_step(const TransitionModel& model, int k) {
  refuse_asymmetric_jumps(model.shape());
  if (std::holds_alternative<std::vector<double>>(model.self())) {
    throw UnsupportedError(
        "spectral method needs a scalar self-transition: a per-state table does not commute "
        "with the directional matrices");
  }
  const Parametrization p = recover_params(model);
  if (const auto* alpha = std::get_if<double>(&model.self())) return k_step_with_self(p, *alpha, k);
  return k_step(p, k);
}

}  // namespace gbdp
