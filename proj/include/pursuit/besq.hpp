#ifndef PURSUIT_BESQ_HPP
#define PURSUIT_BESQ_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pursuit/rng.hpp"
#include "pursuit/theta.hpp"

namespace pursuit::besq {

using theta::ProcessParams;

struct StartState {
  double x;
  double y;

  void validate() const {
    if (!(x >= 0.0 && x < y))
      throw std::invalid_argument("StartState: requires 0 <= x < y");
  }
};

struct GridPolicy {
  double dt;
  double t_max;
  int refine_levels = 0;

  void validate() const {
    if (!(dt > 0.0 && dt <= t_max))
      throw std::invalid_argument("GridPolicy: requires 0 < dt <= t_max");
    if (refine_levels < 0 || refine_levels > 30)
      throw std::invalid_argument("GridPolicy: refine_levels outside [0, 30]");
  }
};

struct CrossingSample {
  double t_cross;      // grid time of the first index with X >= Y
  double x_at_cross;   // X there (meaningless when censored)
  bool censored;       // horizon reached first; t_cross == t_max then
  std::int64_t steps_used;
};

// One exact transition of a squared Bessel process of dimension `dim`
// over a step of length dt: Poisson(x0 / (2 dt)) mixture of
// Gamma(dim/2 + N, 2 dt).  dim == 0 with N == 0 is absorption at 0.
double besq_transition(double dim, double x0, double dt, rng::RandomStream& rs);

// First grid index with X >= Y, sharpened by `refine_levels` rounds of
// step halving that re-simulate from the last pre-crossing state.
CrossingSample simulate_crossing(const ProcessParams& params,
                                 const StartState& start,
                                 const GridPolicy& grid,
                                 rng::RandomStream& rs);

struct HittingSample {
  double time;
  bool censored;
};

// First grid time a BESQ(dim) path from z0 reaches `level`, with the same
// refinement policy as simulate_crossing.
HittingSample simulate_hitting_time(double dim, double z0, double level,
                                    const GridPolicy& grid,
                                    rng::RandomStream& rs);

struct Ensemble {
  ProcessParams params;
  StartState start;
  GridPolicy grid;
  std::uint64_t seed;
  std::vector<CrossingSample> samples;
};

// Replicate k always runs on stream (seed, k); the output order is by
// replicate index whatever the thread count.
Ensemble run_crossing_ensemble(const ProcessParams& params,
                               const StartState& start, const GridPolicy& grid,
                               std::uint64_t seed, std::size_t replicates,
                               int threads = 1);

std::vector<HittingSample> run_hitting_ensemble(double dim, double z0,
                                                double level,
                                                const GridPolicy& grid,
                                                std::uint64_t seed,
                                                std::size_t replicates,
                                                int threads = 1);

// Per-replicate CSV: `replicate,t_cross,x_at_cross,censored`.
std::string ensemble_csv(const Ensemble& ens);

}  // namespace pursuit::besq

#endif
