#ifndef GBDP_SIMULATE_HPP
#define GBDP_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gbdp/model.hpp"

namespace gbdp {

/*
 * Counter-based SplitMix64 stream. Trajectory t of a run seeded with s uses
 * stream key splitmix64(s ^ splitmix64(t)); draw k of that stream is
 * splitmix64(key + (k + 1) * 0x9E3779B97F4A7C15). Uniforms take the top 53
 * bits, so every platform produces the same sequence.
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// One transition from `state`; nullopt when the residual mass sends the
/// chain to the absorbing sink.
std::optional<std::size_t> step(const TransitionModel& model, std::size_t state, CounterRng& rng);

struct Frequencies {
  std::vector<std::uint64_t> counts;  // per grid state, linear index order
  std::uint64_t absorbed = 0;
  std::uint64_t trials = 0;

  double frequency(std::size_t state) const {
    return trials ? static_cast<double>(counts[state]) / static_cast<double>(trials) : 0.0;
  }
};

/// Final-state counts over `trials` independent k-step trajectories from
/// `start`. Throws DomainError unless the model validates cleanly.
Frequencies empirical_kstep(const TransitionModel& model, const State& start, int k,
                            std::uint64_t trials, std::uint64_t seed);

/// Total-variation distance between empirical frequencies and an exact row
/// (the sink's share counts as an extra category).
double total_variation(const Frequencies& f, const Eigen::VectorXd& exact_row);

}  // namespace gbdp

#endif  // GBDP_SIMULATE_HPP
