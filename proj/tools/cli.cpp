#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbdp/algebra.hpp"
#include "gbdp/commute.hpp"
#include "gbdp/errors.hpp"
#include "gbdp/io.hpp"
#include "gbdp/spectral.hpp"
#include "gbdp/stochastic.hpp"

namespace gbdp::cli {

namespace {

double default_tolerance() {
  const char* env = std::getenv("GBDP_TOL");
  if (!env || !*env) return kCommuteTolerance;
  std::size_t used = 0;
  double tol = 0.0;
  try {
    tol = std::stod(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || !(tol >= 0.0)) {
    throw ParseError(std::string("GBDP_TOL is not a non-negative number: ") + env);
  }
  return tol;
}

State parse_state(std::string text) {
  std::erase_if(text, [](char c) { return c == '(' || c == ')' || c == ' '; });
  State u;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      u.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("state must be a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (u.empty()) throw ParseError("empty state");
  return u;
}

// Writes to `path`, or to `out` when the path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("cannot write " + path);
  write(file);
}

struct CommuteArgs {
  std::string model;
  double tol = 0.0;
};

int check_commute(const CommuteArgs& a, std::ostream& out, std::ostream& err) {
  const TransitionModel model = parse_model(read_file(a.model));
  for (const auto& v : validate(model)) err << "warning: " << v.message() << '\n';

  out << std::setprecision(17);
  bool all = true;
  const int q = model.grid().q();
  for (int i = 1; i <= q; ++i) {
    for (int j = i + 1; j <= q; ++j) {
      const CommuteResult r = commutes_direct(model, i, j, a.tol);
      out << "pair (" << i << "," << j << "): max residual " << r.max_residual << ' '
          << (r.commutes ? "commutes" : "does not commute") << '\n';
      for (const auto& c : constraint_residuals(model, i, j)) {
        if (std::abs(c.residual) > a.tol) {
          all = false;
          out << "  violated: " << c.constraint.describe() << " residual " << c.residual << '\n';
        }
      }
      all = all && r.commutes;
    }
  }
  out << (all ? "all pairs commute" : "model does not commute") << '\n';
  return all ? kExitOk : kExitNegative;
}

struct KstepArgs {
  std::string params;
  std::string model;
  int k = 0;
  double self = 0.0;
  std::string method = "spectral";
  std::string out;
};

int kstep(const KstepArgs& a, CLI::App* sub, std::ostream& out) {
  Eigen::MatrixXd result;
  std::optional<Grid> grid;
  if (!a.params.empty()) {
    const Parametrization p = parse_params(read_file(a.params));
    grid.emplace(p.shape);
    if (a.method == "spectral") {
      result = k_step_with_self(p, a.self, a.k);
    } else {
      result = matrix_power(full_matrix(build_model(p, a.self)), a.k);
    }
  } else {
    if (sub->count("--self")) throw ParseError("--self applies to --params input only");
    const TransitionModel model = parse_model(read_file(a.model));
    grid.emplace(model.shape());
    result = a.method == "spectral" ? k_step(model, a.k) : matrix_power(full_matrix(model), a.k);
  }
  emit(a.out, out, [&](std::ostream& o) { write_matrix_csv(*grid, result, o); });
  return kExitOk;
}

struct RanksArgs {
  std::vector<int> dims;
  int l = 1;
  std::string dump;
};

void dump_matrix(const IntMatrix& m, const std::string& prefix) {
  emit(prefix + ".txt", std::cout, [&](std::ostream& o) { write_triplets(m, o); });
  emit(prefix + "_rows.txt", std::cout, [&](std::ostream& o) { write_legend(m.row_labels, o); });
  emit(prefix + "_cols.txt", std::cout, [&](std::ostream& o) { write_legend(m.col_labels, o); });
}

int ranks(const RanksArgs& a, std::ostream& out) {
  const GridShape shape{a.dims, a.l, a.l};
  validate_shape(shape);
  const MatrixOrder fq = order_formula_Q(shape);
  const MatrixOrder fr = order_formula_R(shape);
  const OrthocomplementReport rep = verify_orthocomplement(shape);

  out << "shape: dims=" << state_label(a.dims) << " l=" << a.l << '\n';
  out << "order Q: " << rep.q_rows << "x" << rep.columns << " (formula " << fq.rows << "x" << fq.cols
      << ")\n";
  out << "order R: " << rep.r_rows << "x" << rep.columns << " (formula " << fr.rows << "x" << fr.cols
      << ")\n";
  out << "formula rank R " << rank_formula_R(shape) << ", rank Q " << rank_formula_Q(shape) << '\n';
  out << "exact rank R " << rep.rank_r << ", rank Q " << rep.rank_q << '\n';
  out << "Q R^T = 0: " << (rep.product_zero ? "yes" : "no") << '\n';
  out << "rank Q + rank R = columns: " << (rep.complementary ? "yes" : "no") << " (" << rep.rank_q
      << " + " << rep.rank_r << " of " << rep.columns << ")\n";
  out << "orthocomplement: " << (rep.holds() ? "holds" : "fails") << '\n';

  if (!a.dump.empty()) {
    dump_matrix(build_Q(shape), a.dump + "_Q");
    dump_matrix(build_R(shape), a.dump + "_R");
  }
  return rep.holds() ? kExitOk : kExitNegative;
}

struct NormalizeArgs {
  std::string params;
  double self = 0.0;
  std::string out;
  std::string model_out;
};

int normalize(const NormalizeArgs& a, std::ostream& out, std::ostream& err) {
  const Parametrization p = parse_params(read_file(a.params));
  const Parametrization s = normalize_stochastic(p, a.self);
  const TransitionModel model = build_model(s, a.self);
  const Eigen::MatrixXd full = full_matrix(model);
  const double deviation = (full.rowwise().sum().array() - 1.0).abs().maxCoeff();
  err << std::setprecision(17) << "max row-sum deviation " << deviation << '\n';
  emit(a.out, out, [&](std::ostream& o) { o << write_params(s); });
  if (!a.model_out.empty()) emit(a.model_out, out, [&](std::ostream& o) { o << write_model(model); });
  return kExitOk;
}

struct SimulateArgs {
  std::string model;
  std::string from;
  int k = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

int simulate(const SimulateArgs& a, std::ostream& out) {
  const TransitionModel model = parse_model(read_file(a.model));
  const Frequencies f = empirical_kstep(model, parse_state(a.from), a.k, a.trials, a.seed);
  emit(a.out, out, [&](std::ostream& o) { write_frequencies_csv(model.grid(), f, o); });
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commuting generalized birth-death processes on finite grids"};
  app.name("gbdp");
  app.require_subcommand(1);

  double tol = kCommuteTolerance;
  try {
    tol = default_tolerance();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  CommuteArgs commute_args{{}, tol};
  auto* commute = app.add_subcommand("check-commute", "test whether the directional matrices commute");
  commute->add_option("--model", commute_args.model, "model JSON file")->required();
  commute->add_option("--tol", commute_args.tol, "residual tolerance (default $GBDP_TOL or 1e-12)")
      ->check(CLI::NonNegativeNumber);

  KstepArgs kstep_args;
  auto* ks = app.add_subcommand("kstep", "k-step transition matrix as CSV");
  auto* ks_params = ks->add_option("--params", kstep_args.params, "parametrization JSON file");
  auto* ks_model = ks->add_option("--model", kstep_args.model, "model JSON file");
  ks_params->excludes(ks_model);
  ks->add_option("--k", kstep_args.k, "number of steps")->required()->check(CLI::NonNegativeNumber);
  ks->add_option("--self", kstep_args.self, "self-transition probability in [0,1)");
  ks->add_option("--method", kstep_args.method, "spectral or power")
      ->check(CLI::IsMember({"spectral", "power"}));
  ks->add_option("--out", kstep_args.out, "output CSV (stdout if omitted)");

  RanksArgs ranks_args;
  auto* rk = app.add_subcommand("ranks", "orders and exact ranks of the constraint matrices");
  rk->add_option("--dims", ranks_args.dims, "grid extents, e.g. 2,2")->required()->delimiter(',');
  rk->add_option("--l", ranks_args.l, "maximal jump length")->required();
  rk->add_option("--dump", ranks_args.dump, "write PREFIX_Q/PREFIX_R triplets and legends");

  NormalizeArgs normalize_args;
  auto* nm = app.add_subcommand("normalize", "Perron-scaled stochastic parametrization");
  nm->add_option("--params", normalize_args.params, "parametrization JSON file")->required();
  nm->add_option("--self", normalize_args.self, "self-transition probability in [0,1)");
  nm->add_option("--out", normalize_args.out, "output JSON (stdout if omitted)");
  nm->add_option("--model-out", normalize_args.model_out, "also write the stochastic model JSON");

  SimulateArgs simulate_args;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo k-step frequencies as CSV");
  sim->add_option("--model", simulate_args.model, "model JSON file")->required();
  sim->add_option("--from", simulate_args.from, "start state, e.g. 0,0")->required();
  sim->add_option("--k", simulate_args.k, "number of steps")->required()->check(CLI::NonNegativeNumber);
  sim->add_option("--trials", simulate_args.trials, "number of trajectories")->check(CLI::PositiveNumber);
  sim->add_option("--seed", simulate_args.seed, "master seed");
  sim->add_option("--out", simulate_args.out, "output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*commute) return check_commute(commute_args, out, err);
    if (*ks) {
      if (kstep_args.params.empty() && kstep_args.model.empty()) {
        throw ParseError("kstep needs --params or --model");
      }
      return kstep(kstep_args, ks, out);
    }
    if (*rk) return ranks(ranks_args, out);
    if (*nm) return normalize(normalize_args, out, err);
    if (*sim) return simulate(simulate_args, out);
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << '\n';
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << '\n';
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInput;
}

}  // namespace gbdp::cli
