#include "gbdp/simulate.hpp"

#include <cmath>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::optional<std::size_t> step(const TransitionModel& model, std::size_t state, CounterRng& rng) {
  const Grid& grid = model.grid();
  const int reach = model.shape().max_jump();
  const double x = rng.uniform();

  // Inversion over: self, then each direction's steps -reach..reach.
  double cumulative = model.self_prob(state);
  if (x < cumulative) return state;
  std::optional<std::size_t> last;
  for (int d = 1; d <= grid.q(); ++d) {
    for (int s = -reach; s <= reach; ++s) {
      const double p = model.move(state, d, s);
      if (p <= 0.0) continue;
      last = grid.shifted(state, d, s);
      cumulative += p;
      if (x < cumulative) return last;
    }
  }
  if (model.absorbing()) return std::nullopt;
  // Non-absorbing rows sum to 1 within rounding; x landed in that sliver.
  return last ? last : std::optional<std::size_t>(state);
}

Frequencies empirical_kstep(const TransitionModel& model, const State& start, int k,
                            std::uint64_t trials, std::uint64_t seed) {
  if (k < 0) throw DomainError("step count must be non-negative");
  if (trials == 0) throw DomainError("trial count must be positive");
  const auto violations = validate(model);
  if (!violations.empty()) {
    throw DomainError("model is not a valid probability model: " + violations.front().message());
  }
  const std::size_t origin = model.grid().index_of(start);

  Frequencies f;
  f.counts.assign(model.grid().size(), 0);
  f.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    std::optional<std::size_t> at = origin;
    for (int i = 0; i < k && at; ++i) at = step(model, *at, rng);
    if (at) {
      ++f.counts[*at];
    } else {
      ++f.absorbed;
    }
  }
  return f;
}

double total_variation(const Frequencies& f, const Eigen::VectorXd& exact_row) {
  if (static_cast<std::size_t>(exact_row.size()) != f.counts.size()) {
    throw DomainError("exact row length does not match the grid");
  }
  double tv = 0.0;
  for (std::size_t u = 0; u < f.counts.size(); ++u) tv += std::abs(f.frequency(u) - exact_row(u));
  const double exact_sink = 1.0 - exact_row.sum();
  const double empirical_sink = f.trials ? static_cast<double>(f.absorbed) / f.trials : 0.0;
  tv += std::abs(empirical_sink - exact_sink);
  return 0.5 * tv;
}

}  // namespace gbdp
