#ifndef GBDP_PARAM_HPP
#define GBDP_PARAM_HPP

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbdp/model.hpp"

namespace gbdp {

/// Translation class of an edge: all pairs {r e_i + w, (r + x) e_i + w}
/// with w ranging over the other coordinates.
struct EdgeClass {
  int direction = 0;  // 1-based
  int offset = 0;     // r in 0..n_i - x
  int step = 0;       // x in 1..l

  auto operator<=>(const EdgeClass&) const = default;
  std::string label() const;
};

/*
 * Vertex parameters alpha_u (one per state, linear index order) and edge
 * parameters Gamma (one per EdgeClass). A model built from them,
 * p(u,v) = alpha_u Gamma(class(u,v)) / alpha_v, has pairwise commuting
 * directional matrices. Requires l1 == l2.
 */
struct Parametrization {
  GridShape shape;
  std::vector<double> alpha;
  std::map<EdgeClass, double> gamma;
};

/// Canonical edge classes: by direction, then offset, then step.
std::vector<EdgeClass> edge_classes(const GridShape& shape);

/// Throws DomainError if u and v are not joined by a single-axis jump.
EdgeClass edge_class_of(const GridShape& shape, const State& u, const State& v);

/// Throws DomainError / UnsupportedError describing the first violated invariant.
/// Gamma entries may be zero (the model then omits those edges).
void validate_parametrization(const Parametrization& p);

/// Absent edges (Gamma == 0) are omitted. Raw outputs may exceed 1.
TransitionModel build_model(const Parametrization& p, SelfTransition self = NoSelf{},
                            bool absorbing = false);

/// Relative tolerance for cross-path and cross-representative agreement.
inline constexpr double kConsistencyTolerance = 1e-9;

/*
 * Reversible measure beta with beta_0 = 1, built from unit-step path products
 * beta_u = prod p(u_r, u_{r+1}) / p(u_{r+1}, u_r). Every unit predecessor of u
 * must give the same value (relative 1e-9), otherwise ConsistencyError.
 */
std::vector<double> reversible_measure(const TransitionModel& model);

/// Path product along an explicit path of adjacent states starting anywhere;
/// the value is relative to the first state.
double path_measure(const TransitionModel& model, std::span<const State> path);

/// Inverse of build_model for positive commuting models with l1 == l2,
/// normalized so alpha at the origin is 1.
Parametrization recover_params(const TransitionModel& model);

struct BalanceReport {
  bool balanced = false;
  double worst = 0.0;
  std::optional<std::pair<State, State>> worst_edge;
};

/// |beta_u p(u,v) - beta_v p(v,u)| <= tol for every admissible pair.
BalanceReport detailed_balance_check(const TransitionModel& model, std::span<const double> beta,
                                     double tol);

struct ParamCounts {
  long long edge_params = 0;
  long long vertex_params = 0;
};

ParamCounts param_counts(const GridShape& shape);

}  // namespace gbdp

#endif  // GBDP_PARAM_HPP
