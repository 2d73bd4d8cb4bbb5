#include "pursuit/besq.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

namespace pursuit::besq {

double besq_transition(double dim, double x0, double dt, rng::RandomStream& rs) {
  const std::uint64_t n = rs.poisson(x0 / (2.0 * dt));
  const double shape = dim / 2.0 + static_cast<double>(n);
  return rs.gamma(shape, 2.0 * dt);
}

CrossingSample simulate_crossing(const ProcessParams& params,
                                 const StartState& start,
                                 const GridPolicy& grid,
                                 rng::RandomStream& rs) {
  params.validate();
  start.validate();
  grid.validate();

  const double slack = 1e-9 * grid.dt;
  double h = grid.dt;
  double t = 0.0, x = start.x, y = start.y;
  double lx = x, ly = y, lt = 0.0;  // last state with x < y
  std::int64_t steps = 0;
  bool crossed = false;

  while (t + h <= grid.t_max + slack) {
    lx = x;
    ly = y;
    lt = t;
    x = besq_transition(params.alpha, x, h, rs);
    y = besq_transition(params.beta, y, h, rs);
    t += h;
    ++steps;
    if (x >= y) {
      crossed = true;
      break;
    }
  }
  if (!crossed) return {grid.t_max, x, true, steps};

  // Interval halving around the detected crossing: each round re-simulates
  // the left half of the bracket from the stored left endpoint.  A crossing
  // there moves the estimate to the midpoint; otherwise the midpoint becomes
  // the new left endpoint.  The invariant t == lt + w holds throughout.
  double w = h;
  for (int lvl = 0; lvl < grid.refine_levels; ++lvl) {
    w *= 0.5;
    const double nx = besq_transition(params.alpha, lx, w, rs);
    const double ny = besq_transition(params.beta, ly, w, rs);
    ++steps;
    if (nx >= ny) {
      t = lt + w;
      x = nx;
    } else {
      lx = nx;
      ly = ny;
      lt += w;
    }
  }
  return {t, x, false, steps};
}

HittingSample simulate_hitting_time(double dim, double z0, double level,
                                    const GridPolicy& grid,
                                    rng::RandomStream& rs) {
  if (!(dim >= 0.0))
    throw std::invalid_argument("simulate_hitting_time: dim < 0");
  if (!(z0 >= 0.0 && level >= 0.0))
    throw std::invalid_argument("simulate_hitting_time: negative state");
  grid.validate();
  if (z0 == level) return {0.0, false};
  const bool upward = z0 < level;
  auto hit = [&](double z) { return upward ? z >= level : z <= level; };

  const double slack = 1e-9 * grid.dt;
  double h = grid.dt;
  double t = 0.0, z = z0;
  double lz = z, lt = 0.0;
  bool done = false;

  while (t + h <= grid.t_max + slack) {
    lz = z;
    lt = t;
    z = besq_transition(dim, z, h, rs);
    t += h;
    if (hit(z)) {
      done = true;
      break;
    }
  }
  if (!done) return {grid.t_max, true};

  // same interval-halving refinement as simulate_crossing
  double w = h;
  for (int lvl = 0; lvl < grid.refine_levels; ++lvl) {
    w *= 0.5;
    const double nz = besq_transition(dim, lz, w, rs);
    if (hit(nz)) {
      t = lt + w;
    } else {
      lz = nz;
      lt += w;
    }
  }
  return {t, false};
}

namespace {

// Work-stealing over replicate indices; replicate k is always driven by
// stream (seed, k), so results do not depend on the thread count.
template <class Fn>
void run_replicates(std::size_t n, int threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= n) return;
      fn(k);
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

Ensemble run_crossing_ensemble(const ProcessParams& params,
                               const StartState& start, const GridPolicy& grid,
                               std::uint64_t seed, std::size_t replicates,
                               int threads) {
  params.validate();
  start.validate();
  grid.validate();
  Ensemble ens{params, start, grid, seed, std::vector<CrossingSample>(replicates)};
  run_replicates(replicates, threads, [&](std::size_t k) {
    rng::RandomStream rs(seed, k);
    ens.samples[k] = simulate_crossing(params, start, grid, rs);
  });
  return ens;
}

std::vector<HittingSample> run_hitting_ensemble(double dim, double z0,
                                                double level,
                                                const GridPolicy& grid,
                                                std::uint64_t seed,
                                                std::size_t replicates,
                                                int threads) {
  std::vector<HittingSample> out(replicates);
  run_replicates(replicates, threads, [&](std::size_t k) {
    rng::RandomStream rs(seed, k);
    out[k] = simulate_hitting_time(dim, z0, level, grid, rs);
  });
  return out;
}

std::string ensemble_csv(const Ensemble& ens) {
  std::string out = "replicate,t_cross,x_at_cross,censored\n";
  char buf[160];
  for (std::size_t k = 0; k < ens.samples.size(); ++k) {
    const auto& s = ens.samples[k];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%d\n", k, s.t_cross,
                  s.x_at_cross, s.censored ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace pursuit::besq
