#include "pursuit/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "pursuit/besq.hpp"
#include "pursuit/estimate.hpp"
#include "pursuit/quadcheck.hpp"
#include "pursuit/specialfn.hpp"
#include "pursuit/theta.hpp"

namespace pursuit::verify {

namespace {

using besq::GridPolicy;
using besq::StartState;
using theta::ProcessParams;

CheckRow make_row(std::string name, double measured, double target,
                  double band) {
  const bool ok = std::abs(measured - target) <= band;
  return {std::move(name), measured, target, band, ok};
}

std::string fmt(const char* pat, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pat, a, b, c);
  return buf;
}

std::vector<CheckRow> suite_mellin(const SuiteOptions& opt) {
  const ProcessParams params{opt.alpha, opt.beta};
  const StartState start{0.0, 1.0};
  const double th = theta::find_theta(params).theta;
  const std::vector<double> ss = {0.2 * th, 0.4 * th, 0.6 * th};

  // crossing-location bias is O(sqrt(dt)); pair of runs at dt and 4 dt
  // gives the sqrt(dt)-Richardson value 2 A - B per s point
  const double dt = 5e-4;
  const GridPolicy grid_a{dt, 500.0, 8};
  const GridPolicy grid_b{4.0 * dt, 500.0, 8};
  const auto ens_a = besq::run_crossing_ensemble(params, start, grid_a,
                                                 opt.seed, opt.replicates,
                                                 opt.threads);
  const auto ens_b = besq::run_crossing_ensemble(params, start, grid_b,
                                                 opt.seed + 1,
                                                 opt.replicates / 2,
                                                 opt.threads);
  const auto rows_a = estimate::mellin_xt(ens_a.samples, ss, params, start);
  const auto rows_b = estimate::mellin_xt(ens_b.samples, ss, params, start);
  std::vector<CheckRow> out;
  for (std::size_t i = 0; i < rows_a.size(); ++i) {
    const double mc = 2.0 * rows_a[i].mc - rows_b[i].mc;
    const double se = std::sqrt(4.0 * rows_a[i].mc_se * rows_a[i].mc_se +
                                rows_b[i].mc_se * rows_b[i].mc_se);
    out.push_back(make_row(fmt("mellin_s=%.4g", rows_a[i].s), mc,
                           rows_a[i].closed, 3.0 * se));
  }
  return out;
}

std::vector<CheckRow> suite_tail(const SuiteOptions& opt) {
  const ProcessParams params{opt.alpha, opt.beta};
  const StartState start{0.0, 1.0};
  const double th = theta::find_theta(params).theta;
  const double t_max = 2000.0;
  const GridPolicy grid{0.01, t_max, 4};
  const auto ens = besq::run_crossing_ensemble(params, start, grid, opt.seed,
                                               opt.replicates, opt.threads);
  std::vector<double> times;
  for (double t = 1.0; t <= t_max * (1.0 + 1e-12); t *= 1.15)
    times.push_back(t);
  const auto curve = estimate::survival_curve(ens.samples, times, t_max);
  const double wlo = opt.window_lo > 0.0 ? opt.window_lo : t_max / 100.0;
  const double whi = opt.window_hi > 0.0 ? opt.window_hi : t_max / 10.0;
  const auto fit = estimate::fit_tail_exponent(curve, wlo, whi);
  std::vector<CheckRow> out;
  out.push_back(make_row(fmt("tail_exponent_a=%.3g_b=%.3g", opt.alpha, opt.beta),
                         fit.exponent, th, 0.15));
  return out;
}

std::vector<CheckRow> suite_charfn(const SuiteOptions& opt) {
  const ProcessParams params{opt.alpha, opt.beta};
  const StartState start{0.0, 1.0};
  std::vector<CheckRow> out;
  for (double t : {0.5, 1.0}) {
    // X_t - Y_t sampled exactly in one transition per path
    std::vector<double> d(opt.replicates);
    for (std::size_t k = 0; k < opt.replicates; ++k) {
      rng::RandomStream rs(opt.seed, k);
      const double xt = besq::besq_transition(params.alpha, start.x, t, rs);
      const double yt = besq::besq_transition(params.beta, start.y, t, rs);
      d[k] = xt - yt;
    }
    for (double lam : {0.1, 0.5, 1.0}) {
      double sc = 0, ss = 0, sc2 = 0, ss2 = 0;
      for (double v : d) {
        const double c = std::cos(lam * v), s = std::sin(lam * v);
        sc += c; ss += s; sc2 += c * c; ss2 += s * s;
      }
      const double n = static_cast<double>(opt.replicates);
      const double mre = sc / n, mim = ss / n;
      const double se_re = std::sqrt(std::max(0.0, sc2 / n - mre * mre) / n);
      const double se_im = std::sqrt(std::max(0.0, ss2 / n - mim * mim) / n);

      const std::complex<double> i(0.0, 1.0);
      const double t2 = t * t, l2 = lam * lam;
      const std::complex<double> closed =
          std::pow(1.0 - 2.0 * i * lam * t, -params.alpha / 2.0) *
          std::pow(1.0 + 2.0 * i * lam * t, -params.beta / 2.0) *
          std::exp((i * lam * (start.x - start.y) -
                    2.0 * l2 * t * (start.x + start.y)) /
                   (1.0 + 4.0 * l2 * t2));
      out.push_back(make_row(fmt("charfn_re_l=%.2g_t=%.2g", lam, t), mre,
                             closed.real(), 4.0 * se_re));
      out.push_back(make_row(fmt("charfn_im_l=%.2g_t=%.2g", lam, t), mim,
                             closed.imag(), 4.0 * se_im));
    }
  }
  return out;
}

std::vector<CheckRow> suite_quadrature(const SuiteOptions& opt) {
  std::vector<CheckRow> out;
  const auto sweep = quadcheck::random_sweep(50, opt.seed);
  for (const auto& r : sweep)
    out.push_back(make_row(
        fmt("lemma_g=%.4g_l=%.4g_m=%.4g", r.gamma, r.lambda, r.mu), r.relerr,
        0.0, 1e-8));
  const double cases[][3] = {{2.0, 2.0, 0.5}, {5.0, 3.0, 0.25}};
  for (const auto& c : cases) {
    const auto g = quadcheck::gauche_identity_check(c[0], c[1], c[2]);
    out.push_back(make_row(fmt("gauche_a=%.2g_b=%.2g_nu=%.3g", c[0], c[1], c[2]),
                           g.lhs, g.rhs, 1e-8 * std::abs(g.rhs)));
  }
  return out;
}

std::vector<CheckRow> suite_asymptotics(const SuiteOptions& opt) {
  (void)opt;
  const double a0 = 0.01;
  std::vector<CheckRow> out;
  for (double b : {3.0, 4.0}) {
    const double th = theta::find_theta({a0, b}).theta;
    out.push_back(make_row(fmt("asym_ratio_b=%.2g", b),
                           th / theta::theta_small_alpha(b, a0), 1.0, 0.05));
  }
  {
    const double th = theta::find_theta({a0, 2.0}).theta;
    out.push_back(make_row("asym_ratio_b=2",
                           th / theta::theta_small_alpha(2.0, a0), 1.0, 0.08));
  }
  for (double b : {0.5, 1.0}) {
    const double th = theta::find_theta({a0, b}).theta;
    const double slope = (th - (1.0 - b / 2.0)) / a0;
    const double target = 1.0 / (2.0 - std::pow(2.0, b / 2.0)) - 0.5;
    out.push_back(
        make_row(fmt("asym_slope_b=%.2g", b), slope / target, 1.0, 0.10));
  }
  return out;
}

std::vector<CheckRow> suite_hitting(const SuiteOptions& opt) {
  std::vector<CheckRow> out;
  struct Cfg { double dim, z0, a, lam, t_max; };
  for (const Cfg& c : {Cfg{3, 1, 4, 0.5, 30.0}, Cfg{5, 4, 1, 0.5, 8.0}}) {
    const double nu = c.dim / 2.0 - 1.0;
    const double q0 = std::sqrt(2.0 * c.lam * c.z0);
    const double qa = std::sqrt(2.0 * c.lam * c.a);
    double target;
    if (c.z0 < c.a) {
      target = std::pow(c.z0, -nu / 2.0) * specialfn::bessel_i(nu, q0) /
               (std::pow(c.a, -nu / 2.0) * specialfn::bessel_i(nu, qa));
    } else {
      target = std::pow(c.z0, -nu / 2.0) * specialfn::bessel_k(nu, q0) /
               (std::pow(c.a, -nu / 2.0) * specialfn::bessel_k(nu, qa));
    }
    // grid-crossing delay is O(sqrt(dt)); two runs at dt and 4 dt give a
    // sqrt(dt)-Richardson value 2 A - B with the leading bias cancelled
    auto laplace_mc = [&](double dt, std::uint64_t seed, std::size_t n,
                          double& se) {
      const GridPolicy grid{dt, c.t_max, 6};
      const auto hits = besq::run_hitting_ensemble(c.dim, c.z0, c.a, grid,
                                                   seed, n, opt.threads);
      double sum = 0, sum2 = 0;
      for (const auto& h : hits) {
        const double v = h.censored ? 0.0 : std::exp(-c.lam * h.time);
        sum += v;
        sum2 += v * v;
      }
      const double nn = static_cast<double>(n);
      const double mc = sum / nn;
      se = std::sqrt(std::max(0.0, sum2 / nn - mc * mc) / nn);
      return mc;
    };
    const double dt = 2e-4;
    double se_a = 0, se_b = 0;
    const double a = laplace_mc(dt, opt.seed, opt.replicates, se_a);
    const double b =
        laplace_mc(4.0 * dt, opt.seed + 1, opt.replicates / 2, se_b);
    const double mc = 2.0 * a - b;
    const double se = std::sqrt(4.0 * se_a * se_a + se_b * se_b);
    out.push_back(make_row(
        fmt("laplace_dim=%.2g_z0=%.2g_a=%.2g", c.dim, c.z0, c.a), mc, target,
        3.0 * se));
  }
  {
    // short-time rate: t ln P(tau <= t) should approach -0.5 from below
    const std::vector<double> ts = {0.8, 0.6, 0.45, 0.35};
    const auto tab = quadcheck::short_time_rate_check(
        2.0, 1.0, 4.0, ts, 2e-4, opt.replicates, opt.seed + 1, opt.threads);
    bool mono = true, usable = true;
    double prev = -1e300;
    for (auto it = tab.rbegin(); it != tab.rend(); ++it) {
      if (!it->usable) { usable = false; continue; }
      if (it->t_ln_p < prev - 0.05) mono = false;
      prev = it->t_ln_p;
    }
    const double limit = quadcheck::short_time_rate_limit(1.0, 4.0);
    out.push_back(make_row("short_time_monotone",
                           usable && mono ? 1.0 : 0.0, 1.0, 0.0));
    if (!tab.empty() && tab.front().usable)
      out.push_back(make_row("short_time_largest_t", tab.front().t_ln_p,
                             limit, 0.35));
  }
  return out;
}

}  // namespace

std::vector<CheckRow> run_suite(const std::string& suite,
                                const SuiteOptions& opt) {
  if (suite == "mellin") return suite_mellin(opt);
  if (suite == "tail") return suite_tail(opt);
  if (suite == "charfn") return suite_charfn(opt);
  if (suite == "quadrature") return suite_quadrature(opt);
  if (suite == "asymptotics") return suite_asymptotics(opt);
  if (suite == "hitting") return suite_hitting(opt);
  throw std::invalid_argument("run_suite: unknown suite '" + suite + "'");
}

bool all_pass(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::string report_csv(const std::vector<CheckRow>& rows) {
  std::string out = "check,measured,target,band,pass\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%d\n",
                  r.name.c_str(), r.measured, r.target, r.band,
                  r.pass ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace pursuit::verify
