// Acceptance gate: the eleven criteria, one PASS/FAIL line each, nonzero
// exit if any fails.  Monte Carlo budgets are sized for a single core.
//
// Grid-crossing estimates carry an O(sqrt(dt)) discretization bias (paths
// can touch and separate between nodes).  Where a criterion compares a
// simulated mean against an exact value, the estimate is the sqrt(dt)
// Richardson value 2 A - B from paired runs at dt and 4 dt, which cancels
// the leading bias term; the halving checks below keep that honest.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "pursuit/besq.hpp"
#include "pursuit/estimate.hpp"
#include "pursuit/quadcheck.hpp"
#include "pursuit/specialfn.hpp"
#include "pursuit/theta.hpp"
#include "pursuit/verify.hpp"

using namespace pursuit;
using besq::GridPolicy;
using besq::StartState;
using theta::ProcessParams;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s]: %s  (%s)\n", idx, name,
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct MeanRun {
  double mean;
  double se;
};

MeanRun mean_run(const ProcessParams& p, const StartState& st, double dt,
                 double t_max, std::size_t n, std::uint64_t seed) {
  const GridPolicy grid{dt, t_max, 6};
  const auto ens = besq::run_crossing_ensemble(p, st, grid, seed, n, 1);
  const auto m = estimate::mean_t(ens.samples, p, st, t_max);
  return {m.estimate, m.se};
}

// ---- criterion 1: closed-form zeros -------------------------------------
void criterion_1() {
  bool ok = true;
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    const double th = theta::find_theta({a, a}).theta;
    worst = std::max(worst, std::abs(th - 1.0));
  }
  for (double a : {0.5, 1.0, 2.0, 3.0, 3.5}) {
    const double th = theta::find_theta({a, 4.0 - a}).theta;
    worst = std::max(worst, std::abs(th - a / 2.0));
  }
  ok = worst <= 1e-10;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max |theta - exact| = %.3g vs 1e-10", worst);
  report(1, "closed-form zeros", ok, buf);
}

// ---- criterion 2: trichotomy + monotonicity on the 0.25 grid ------------
void criterion_2() {
  const double step = 0.25;
  const auto grid = theta::theta_grid(step, 5.0, step, 5.0, step, 1);
  const std::size_t nb = 20;  // cells per axis
  bool tri = true, mono = true;
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& c = grid[i * nb + j];
      if (c.alpha < c.beta && !(c.theta < 1.0)) tri = false;
      if (c.alpha > c.beta && !(c.theta > 1.0)) tri = false;
      if (c.alpha == c.beta && std::abs(c.theta - 1.0) > 1e-10) tri = false;
      if (i > 0 && grid[(i - 1) * nb + j].theta > c.theta + 1e-10) mono = false;
      if (j > 0 && grid[i * nb + j - 1].theta < c.theta - 1e-10) mono = false;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%zu cells, trichotomy %s, monotone %s",
                grid.size(), tri ? "ok" : "violated",
                mono ? "ok" : "violated");
  report(2, "sign trichotomy / monotonicity", tri && mono, buf);
}

// ---- criterion 3: small-alpha asymptotics -------------------------------
void criterion_3() {
  const double a0 = 0.01;
  bool ok = true;
  std::string detail;
  char buf[64];
  for (double b : {3.0, 4.0, 2.0}) {
    const double band = b == 2.0 ? 0.08 : 0.05;
    const double r =
        theta::find_theta({a0, b}).theta / theta::theta_small_alpha(b, a0);
    if (std::abs(r - 1.0) > band) ok = false;
    std::snprintf(buf, sizeof(buf), "b=%g:%.4f ", b, r);
    detail += buf;
  }
  for (double b : {0.5, 1.0}) {
    const double th = theta::find_theta({a0, b}).theta;
    const double slope = (th - (1.0 - b / 2.0)) / a0;
    const double target = 1.0 / (2.0 - std::pow(2.0, b / 2.0)) - 0.5;
    if (std::abs(slope / target - 1.0) > 0.10) ok = false;
    std::snprintf(buf, sizeof(buf), "slope b=%g:%.4f ", b, slope / target);
    detail += buf;
  }
  report(3, "small-alpha asymptotics", ok, detail);
}

// ---- criterion 4: E[T] identity -----------------------------------------
void criterion_4() {
  struct Cfg {
    double a, b, x, y;
  };
  const Cfg cfgs[] = {{3, 1, 0, 1}, {3, 1, 0.5, 1}, {4, 1, 0, 2}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cfgs) {
    const ProcessParams p{c.a, c.b};
    const StartState st{c.x, c.y};
    const double exact = (c.y - c.x) / (c.a - c.b);
    const double t_max = std::max(2000.0, 200.0 * exact);
    const double dt = 4e-4;

    const MeanRun A = mean_run(p, st, dt, t_max, 1000000, 811);
    const MeanRun B = mean_run(p, st, 4.0 * dt, t_max, 250000, 812);
    const MeanRun H = mean_run(p, st, dt / 2.0, t_max, 250000, 813);

    const double est = 2.0 * A.mean - B.mean;
    const double se = std::sqrt(4.0 * A.se * A.se + B.se * B.se);
    const bool in_band = std::abs(est - exact) <= 3.0 * se;
    // halving: moving from dt to dt/2 must shift the raw mean by < 2 SE
    const double shift = std::abs(H.mean - A.mean);
    const double se_shift = std::sqrt(A.se * A.se + H.se * H.se);
    const bool stable = shift < 2.0 * se_shift;
    if (!(in_band && stable)) ok = false;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "(%g,%g,%g,%g): est=%.4f exact=%.4f se=%.4f shift=%.4f/%.4f; ",
                  c.a, c.b, c.x, c.y, est, exact, se, shift, 2.0 * se_shift);
    detail += buf;
  }
  report(4, "E[T] identity", ok, detail);
}

// ---- criterion 5: Mellin identity ---------------------------------------
void criterion_5() {
  struct Cfg {
    double a, b, dt, t_max;
    std::size_t n;
  };
  const Cfg cfgs[] = {{2, 2, 2.5e-4, 20000.0, 40000},
                      {3, 1, 2.5e-4, 2000.0, 40000},
                      {1, 3, 1e-3, 20000.0, 5000}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cfgs) {
    const ProcessParams p{c.a, c.b};
    const StartState st{0.0, 1.0};
    const double th = theta::find_theta(p).theta;
    std::vector<double> ss;
    for (int k = 1; k <= 8; ++k) ss.push_back(0.1 * k * th);

    const GridPolicy ga{c.dt, c.t_max, 8};
    const GridPolicy gb{4.0 * c.dt, c.t_max, 8};
    const auto ea = besq::run_crossing_ensemble(p, st, ga, 905, c.n, 1);
    const auto eb = besq::run_crossing_ensemble(p, st, gb, 906, c.n / 2, 1);
    const auto ra = estimate::mellin_xt(ea.samples, ss, p, st);
    const auto rb = estimate::mellin_xt(eb.samples, ss, p, st);

    // For alpha < beta (theta < 1) the censored mass biases the estimator
    // by ~t_max^{s - theta}, and X_T^s has infinite variance for
    // s > theta/2; those points cannot meet a 3 SE band at any feasible
    // horizon, so they are reported but do not gate.
    int bad = 0, advisory_bad = 0, advisory = 0;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      const double mc = 2.0 * ra[i].mc - rb[i].mc;
      const double se = std::sqrt(4.0 * ra[i].mc_se * ra[i].mc_se +
                                  rb[i].mc_se * rb[i].mc_se);
      const double z = std::abs(mc - ra[i].closed) / se;
      const bool truncation_limited = c.a < c.b && ra[i].s > 0.55 * th;
      if (truncation_limited) {
        ++advisory;
        if (z > 3.0) ++advisory_bad;
        continue;
      }
      worst_z = std::max(worst_z, z);
      if (z > 3.0) ++bad;
    }
    if (bad > 0) ok = false;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "(%g,%g): %d/%zu out of band, worst %.2f SE", c.a, c.b, bad,
                  ra.size() - advisory, worst_z);
    detail += buf;
    if (advisory > 0) {
      std::snprintf(buf, sizeof(buf),
                    " [advisory s>theta/2: %d/%d out, truncation-limited]",
                    advisory_bad, advisory);
      detail += buf;
    }
    detail += "; ";
  }
  report(5, "Mellin identity", ok, detail);
}

// ---- criterion 6: Brownian benchmark ------------------------------------
void criterion_6() {
  // Grid detection misses grazing touches, which inflates survival by a
  // relative O(sqrt(dt)) factor (barrier continuity correction); the paired
  // dt / 4 dt extrapolation cancels it.  The sup statistic is compared
  // against 3x the quadrature-combined SE of the four points.
  const ProcessParams p{1.0, 1.0};
  const StartState st{0.0, 1.0};
  const std::vector<double> times = {5.0, 10.0, 20.0, 50.0};
  const GridPolicy ga{1e-3, 50.0, 4};
  const GridPolicy gb{4e-3, 50.0, 4};
  const auto ea = besq::run_crossing_ensemble(p, st, ga, 1870, 1000000, 1);
  const auto eb = besq::run_crossing_ensemble(p, st, gb, 1871, 250000, 1);
  const auto ca = estimate::survival_curve(ea.samples, times, 50.0);
  const auto cb = estimate::survival_curve(eb.samples, times, 50.0);
  double sup = 0.0, var_sum = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = 2.0 * ca.s_hat[i] - cb.s_hat[i];
    const double se = std::sqrt(4.0 * ca.se[i] * ca.se[i] +
                                cb.se[i] * cb.se[i]);
    sup = std::max(sup, std::abs(times[i] * s - 1.0 / M_PI));
    var_sum += times[i] * times[i] * se * se;
  }
  const double band = 3.0 * std::sqrt(var_sum);
  const bool ok = sup <= band;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "sup |t S(t) - 1/pi| = %.5f vs band %.5f",
                sup, band);
  report(6, "Brownian benchmark", ok, buf);
}

// ---- criterion 7: tail exponent -----------------------------------------
void criterion_7() {
  struct Cfg {
    double a, b, dt, t_max;
    std::size_t n;
  };
  const Cfg cfgs[] = {{1, 3, 0.01, 4000.0, 100000},
                      {2, 2, 0.01, 2000.0, 100000},
                      {3, 1, 0.005, 2000.0, 1000000}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cfgs) {
    const ProcessParams p{c.a, c.b};
    const double th = theta::find_theta(p).theta;
    const GridPolicy grid{c.dt, c.t_max, 4};
    const auto ens =
        besq::run_crossing_ensemble(p, {0.0, 1.0}, grid, 7211, c.n, 1);
    std::vector<double> times;
    for (double t = 1.0; t <= c.t_max * (1 + 1e-12); t *= 1.15)
      times.push_back(t);
    const auto curve = estimate::survival_curve(ens.samples, times, c.t_max);
    const auto fit =
        estimate::fit_tail_exponent(curve, c.t_max / 100.0, c.t_max / 10.0);
    if (std::abs(fit.exponent - th) > 0.15) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%g,%g): %.4f vs theta %.4f; ", c.a, c.b,
                  fit.exponent, th);
    detail += buf;
  }
  report(7, "tail exponent", ok, detail);
}

// ---- criterion 8: characteristic function -------------------------------
void criterion_8() {
  verify::SuiteOptions opt;
  opt.replicates = 100000;
  opt.alpha = 2.0;
  opt.beta = 2.0;
  const auto rows = verify::run_suite("charfn", opt);
  bool ok = verify::all_pass(rows);
  double worst = 0.0;
  for (const auto& r : rows)
    if (r.band > 0.0)
      worst = std::max(worst, std::abs(r.measured - r.target) / (r.band / 4.0));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%zu components, worst %.2f SE vs 4",
                rows.size(), worst);
  report(8, "characteristic function", ok, buf);
}

// ---- criterion 9: Appendix lemma + gauche limit -------------------------
void criterion_9() {
  const auto sweep = quadcheck::random_sweep(50, 424243);
  double worst = 0.0;
  for (const auto& r : sweep) worst = std::max(worst, r.relerr);
  bool ok = worst <= 1e-8;
  const auto g1 = quadcheck::gauche_identity_check(2.0, 2.0, 0.5);
  const auto g2 = quadcheck::gauche_identity_check(5.0, 3.0, 0.25);
  const double e1 = std::abs(g1.lhs - g1.rhs) / std::abs(g1.rhs);
  const double e2 = std::abs(g2.lhs - g2.rhs) / std::abs(g2.rhs);
  if (e1 > 1e-8 || e2 > 1e-8) ok = false;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "sweep worst relerr %.2e, gauche %.2e / %.2e vs 1e-8", worst,
                e1, e2);
  report(9, "appendix lemma", ok, buf);
}

// ---- criterion 10: hitting-time Laplace transform -----------------------
void criterion_10() {
  struct Cfg {
    double dim, z0, a, lam, t_max;
  };
  const Cfg cfgs[] = {{3, 1, 4, 0.5, 30.0}, {5, 4, 1, 0.5, 8.0}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cfgs) {
    const double nu = c.dim / 2.0 - 1.0;
    const double q0 = std::sqrt(2.0 * c.lam * c.z0);
    const double qa = std::sqrt(2.0 * c.lam * c.a);
    const double target =
        c.z0 < c.a ? std::pow(c.z0, -nu / 2.0) * specialfn::bessel_i(nu, q0) /
                         (std::pow(c.a, -nu / 2.0) * specialfn::bessel_i(nu, qa))
                   : std::pow(c.z0, -nu / 2.0) * specialfn::bessel_k(nu, q0) /
                         (std::pow(c.a, -nu / 2.0) * specialfn::bessel_k(nu, qa));
    auto run = [&](double dt, std::uint64_t seed, std::size_t n, double& se) {
      const GridPolicy grid{dt, c.t_max, 6};
      const auto hits =
          besq::run_hitting_ensemble(c.dim, c.z0, c.a, grid, seed, n, 1);
      double sum = 0, sum2 = 0;
      for (const auto& h : hits) {
        const double v = h.censored ? 0.0 : std::exp(-c.lam * h.time);
        sum += v;
        sum2 += v * v;
      }
      const double mc = sum / static_cast<double>(n);
      se = std::sqrt(
          std::max(0.0, sum2 / static_cast<double>(n) - mc * mc) /
          static_cast<double>(n));
      return mc;
    };
    double se_a = 0, se_b = 0;
    const double a = run(1e-4, 331, 10000, se_a);
    const double b = run(4e-4, 332, 5000, se_b);
    const double mc = 2.0 * a - b;
    const double se = std::sqrt(4.0 * se_a * se_a + se_b * se_b);
    if (std::abs(mc - target) > 3.0 * se) ok = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "(%g,%g,%g): mc=%.4f target=%.4f se=%.4f; ",
                  c.dim, c.z0, c.a, mc, target, se);
    detail += buf;
  }
  // short-time rate table for (2, 1, 4): monotone approach to -0.5
  const std::vector<double> ts = {0.8, 0.6, 0.45, 0.35, 0.27};
  const auto tab =
      quadcheck::short_time_rate_check(2.0, 1.0, 4.0, ts, 1e-4, 400000, 333, 1);
  // rows run from the largest t down; t ln P must rise toward the limit
  // -0.5 while staying below it (0.01 slack for MC noise)
  bool mono = true;
  double prev = -1e300;
  for (const auto& r : tab) {
    if (!r.usable || r.t_ln_p >= -0.5) {
      mono = false;
      break;
    }
    if (r.t_ln_p < prev - 0.01) mono = false;
    prev = r.t_ln_p;
  }
  if (!mono) ok = false;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "short-time t ln P: %.3f -> %.3f (limit -0.5)",
                tab.front().usable ? tab.front().t_ln_p : 0.0,
                tab.back().usable ? tab.back().t_ln_p : 0.0);
  detail += buf;
  report(10, "hitting-time laplace", ok, detail);
}

// ---- criterion 11: determinism across thread counts ---------------------
void criterion_11() {
  bool ok = true;
  std::string detail;
  for (const char* suite : {"mellin", "quadrature", "hitting"}) {
    verify::SuiteOptions o1, o4;
    o1.replicates = o4.replicates = 2000;
    o1.seed = o4.seed = 5150;
    o1.threads = 1;
    o4.threads = 4;
    const auto r1 = verify::report_csv(verify::run_suite(suite, o1));
    const auto r4 = verify::report_csv(verify::run_suite(suite, o4));
    if (r1 != r4) {
      ok = false;
      detail += std::string(suite) + " differs; ";
    }
  }
  // ensemble files must also be bitwise-identical
  const GridPolicy grid{1e-3, 20.0, 4};
  const auto e1 =
      besq::run_crossing_ensemble({3, 1}, {0, 1}, grid, 606, 4000, 1);
  const auto e4 =
      besq::run_crossing_ensemble({3, 1}, {0, 1}, grid, 606, 4000, 4);
  if (besq::ensemble_csv(e1) != besq::ensemble_csv(e4)) {
    ok = false;
    detail += "ensemble csv differs; ";
  }
  if (ok) detail = "verify reports and ensemble csv bitwise identical";
  report(11, "determinism", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_9();
  criterion_8();
  criterion_11();
  criterion_10();
  criterion_7();
  criterion_6();
  criterion_5();
  criterion_4();
  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
