#include "gbdp/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbdp/errors.hpp"
#include "gbdp/spectral.hpp"

namespace gbdp {

namespace {

bool reaches_all(const Eigen::MatrixXd& m, bool transpose) {
  const Eigen::Index n = m.rows();
  std::vector<char> seen(n, 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const Eigen::Index u = stack.back();
    stack.pop_back();
    for (Eigen::Index v = 0; v < n; ++v) {
      const double w = transpose ? m(v, u) : m(u, v);
      if (w != 0.0 && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

}  // namespace

bool is_irreducible(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (m.rows() == 1) return true;
  return reaches_all(m, false) && reaches_all(m, true);
}

PerronResult perron(const Eigen::MatrixXd& m, double tol, const Eigen::VectorXd& start) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) throw DomainError("Perron vector needs a non-empty square matrix");
  if ((m.array() < 0.0).any()) throw DomainError("Perron vector needs a non-negative matrix");
  if (!is_irreducible(m)) throw StructureError("matrix is reducible; Perron vector is not unique");

  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  const double eps = 0.5 * norm;
  const Eigen::MatrixXd shifted = m + eps * Eigen::MatrixXd::Identity(n, n);

  Eigen::VectorXd v = start.size() == n ? start : Eigen::VectorXd::Constant(n, 1.0);
  if ((v.array() <= 0.0).any()) throw DomainError("Perron start vector must be positive");
  v /= v.sum();

  PerronResult r;
  const int cap = 100 * static_cast<int>(n);
  for (int it = 1; it <= cap; ++it) {
    const Eigen::VectorXd mv = m * v;
    const Eigen::ArrayXd ratio = mv.array() / v.array();
    r.lower.push_back(ratio.minCoeff());
    r.upper.push_back(ratio.maxCoeff());

    Eigen::VectorXd next = shifted * v;
    next /= next.sum();
    const double change = (next - v).cwiseAbs().maxCoeff();
    v = std::move(next);
    if (change <= tol) {
      r.iterations = it;
      r.vector = v;
      r.rho = (m * v).sum();  // v sums to 1
      return r;
    }
  }
  throw ConvergenceError("power iteration did not converge within " + std::to_string(cap) +
                         " iterations");
}

Parametrization normalize_stochastic(const Parametrization& p, double alpha_self) {
  if (!(alpha_self >= 0.0 && alpha_self < 1.0)) {
    throw DomainError("self-transition probability must lie in [0, 1)");
  }
  const BlockDecomposition bd = block_decompose(p);
  const PerronResult pr = perron(bd.summed());

  Parametrization out = p;
  const double c = (1.0 - alpha_self) / pr.rho;
  for (auto& [cls, g] : out.gamma) g *= c;
  for (Eigen::Index u = 0; u < pr.vector.size(); ++u) out.alpha[u] = pr.vector(0) / pr.vector(u);
  return out;
}

bool is_stochastic(const Eigen::MatrixXd& p, double tol) {
  if ((p.array() < 0.0).any()) throw DomainError("stochastic check needs a non-negative matrix");
  if (p.rows() == 0) return false;
  const Eigen::VectorXd sums = p.rowwise().sum();
  return ((sums.array() - 1.0).abs() <= tol).all();
}

}  // namespace gbdp
