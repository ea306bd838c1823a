#include "gbdp/param.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::string edge_text(const Grid& g, std::size_t u, std::size_t v) {
  return g.label(u) + "->" + g.label(v);
}

void require_symmetric_jumps(const GridShape& shape, const char* what) {
  if (!shape.symmetric_jumps()) {
    throw UnsupportedError(std::string(what) + " requires l1 == l2 (got l1 = " +
                           std::to_string(shape.l1) + ", l2 = " + std::to_string(shape.l2) + ")");
  }
}

}  // namespace

std::string EdgeClass::label() const {
  std::ostringstream os;
  os << "gamma(d=" << direction << ",r=" << offset << ",x=" << step << ")";
  return os.str();
}

std::vector<EdgeClass> edge_classes(const GridShape& shape) {
  validate_shape(shape);
  const int l = shape.max_jump();
  std::vector<EdgeClass> out;
  for (int d = 1; d <= shape.q(); ++d) {
    const int n = shape.dims[d - 1];
    for (int r = 0; r < n; ++r) {
      for (int x = 1; x <= l && r + x <= n; ++x) out.push_back({d, r, x});
    }
  }
  return out;
}

EdgeClass edge_class_of(const GridShape& shape, const State& u, const State& v) {
  const Grid grid(shape);
  const auto move = grid.edge_between(u, v);
  if (!move) {
    throw DomainError("states " + state_label(u) + " and " + state_label(v) + " are not adjacent");
  }
  const int d = move->first;
  return {d, std::min(u[d - 1], v[d - 1]), std::abs(move->second)};
}

void validate_parametrization(const Parametrization& p) {
  const Grid grid(p.shape);
  require_symmetric_jumps(p.shape, "parametrization");
  if (p.alpha.size() != grid.size()) {
    throw DomainError("alpha has " + std::to_string(p.alpha.size()) + " entries, expected " +
                      std::to_string(grid.size()));
  }
  for (std::size_t u = 0; u < p.alpha.size(); ++u) {
    if (!(p.alpha[u] > 0.0) || !std::isfinite(p.alpha[u])) {
      throw DomainError("alpha at " + grid.label(u) + " must be positive and finite");
    }
  }
  const auto classes = edge_classes(p.shape);
  if (p.gamma.size() != classes.size()) {
    throw DomainError("gamma has " + std::to_string(p.gamma.size()) + " entries, expected " +
                      std::to_string(classes.size()));
  }
  for (const auto& c : classes) {
    const auto it = p.gamma.find(c);
    if (it == p.gamma.end()) throw DomainError("gamma is missing " + c.label());
    if (!(it->second >= 0.0) || !std::isfinite(it->second)) {
      throw DomainError(c.label() + " must be non-negative and finite");
    }
  }
}

TransitionModel build_model(const Parametrization& p, SelfTransition self, bool absorbing) {
  validate_parametrization(p);
  const Grid grid(p.shape);
  std::vector<EdgeProb> edges;
  for (const auto& e : directed_edges(p.shape)) {
    const double g = p.gamma.at(edge_class_of(p.shape, e.from, e.to));
    if (g == 0.0) continue;
    const double prob = p.alpha[grid.index_of(e.from)] * g / p.alpha[grid.index_of(e.to)];
    edges.push_back({e.from, e.to, prob});
  }
  return TransitionModel(p.shape, std::move(edges), std::move(self), absorbing);
}

std::vector<double> reversible_measure(const TransitionModel& model) {
  const Grid& grid = model.grid();
  std::vector<double> beta(grid.size(), 0.0);
  beta[0] = 1.0;
  for (std::size_t u = 1; u < grid.size(); ++u) {
    bool have = false;
    for (int d = 1; d <= grid.q(); ++d) {
      const auto pred = grid.shifted(u, d, -1);
      if (!pred) continue;
      const double forward = model.move(*pred, d, +1);
      const double backward = model.move(u, d, -1);
      if (!(forward > 0.0) || !(backward > 0.0)) {
        throw PositivityError("unit transition between " + edge_text(grid, *pred, u) +
                              " has zero probability");
      }
      const double value = beta[*pred] * forward / backward;
      if (!have) {
        beta[u] = value;
        have = true;
      } else if (!close_rel(beta[u], value, kConsistencyTolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "path products disagree at " << grid.label(u) << ": " << beta[u] << " vs " << value;
        throw ConsistencyError(os.str());
      }
    }
  }
  return beta;
}

double path_measure(const TransitionModel& model, std::span<const State> path) {
  const Grid& grid = model.grid();
  double value = 1.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const std::size_t a = grid.index_of(path[k]);
    const std::size_t b = grid.index_of(path[k + 1]);
    const double forward = model.prob(a, b);
    const double backward = model.prob(b, a);
    if (!(forward > 0.0) || !(backward > 0.0)) {
      throw PositivityError("path step " + edge_text(grid, a, b) + " has zero probability");
    }
    value *= forward / backward;
  }
  return value;
}

Parametrization recover_params(const TransitionModel& model) {
  const Grid& grid = model.grid();
  const GridShape& shape = grid.shape();
  require_symmetric_jumps(shape, "parameter recovery");

  const auto edges = directed_edges(shape);
  for (const auto& e : edges) {
    const std::size_t u = grid.index_of(e.from);
    if (!(model.move(u, e.direction, e.step) > 0.0)) {
      throw PositivityError("edge " + state_label(e.from) + "->" + state_label(e.to) +
                            " has zero probability");
    }
  }

  const std::vector<double> beta = reversible_measure(model);
  Parametrization p;
  p.shape = shape;
  p.alpha.resize(grid.size());
  for (std::size_t u = 0; u < grid.size(); ++u) p.alpha[u] = 1.0 / std::sqrt(beta[u]);

  // Canonical representative (r e_i, (r+x) e_i) fixes each class value.
  for (const auto& c : edge_classes(shape)) {
    State from(shape.q(), 0);
    State to(shape.q(), 0);
    from[c.direction - 1] = c.offset;
    to[c.direction - 1] = c.offset + c.step;
    const std::size_t u = grid.index_of(from);
    const std::size_t v = grid.index_of(to);
    p.gamma[c] = model.prob(u, v) * p.alpha[v] / p.alpha[u];
  }

  for (const auto& e : edges) {
    const std::size_t u = grid.index_of(e.from);
    const std::size_t v = grid.index_of(e.to);
    const double g = model.prob(u, v) * p.alpha[v] / p.alpha[u];
    const EdgeClass c = edge_class_of(shape, e.from, e.to);
    const double ref = p.gamma.at(c);
    if (!close_rel(g, ref, kConsistencyTolerance)) {
      std::ostringstream os;
      os.precision(17);
      os << c.label() << " differs across representatives: " << ref << " vs " << g << " on "
         << edge_text(grid, u, v);
      throw ConsistencyError(os.str());
    }
  }
  return p;
}

BalanceReport detailed_balance_check(const TransitionModel& model, std::span<const double> beta,
                                     double tol) {
  const Grid& grid = model.grid();
  if (beta.size() != grid.size()) {
    throw DomainError("measure has " + std::to_string(beta.size()) + " entries, expected " +
                      std::to_string(grid.size()));
  }
  for (std::size_t u = 0; u < beta.size(); ++u) {
    if (!(beta[u] > 0.0)) throw DomainError("measure must be positive at " + grid.label(u));
  }

  BalanceReport report;
  const int reach = grid.shape().max_jump();
  for (std::size_t u = 0; u < grid.size(); ++u) {
    for (int d = 1; d <= grid.q(); ++d) {
      for (int s = 1; s <= reach; ++s) {
        const auto v = grid.shifted(u, d, s);
        if (!v) continue;
        const double gap = std::abs(beta[u] * model.move(u, d, s) - beta[*v] * model.move(*v, d, -s));
        if (!report.worst_edge || gap > report.worst) {
          report.worst = gap;
          report.worst_edge = std::make_pair(grid.state_of(u), grid.state_of(*v));
        }
      }
    }
  }
  report.balanced = report.worst <= tol;
  return report;
}

ParamCounts param_counts(const GridShape& shape) {
  validate_shape(shape);
  require_symmetric_jumps(shape, "parameter counting");
  ParamCounts c;
  c.vertex_params = 1;
  for (int i = 0; i < shape.q(); ++i) {
    c.vertex_params *= shape.dims[i] + 1;
    for (int x = 1; x <= shape.l1; ++x) c.edge_params += shape.dims[i] - x + 1;
  }
  return c;
}

}  // namespace gbdp
