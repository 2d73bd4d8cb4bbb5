#include "pursuit/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace pursuit::estimate {

SurvivalCurve survival_curve(const std::vector<CrossingSample>& samples,
                             const std::vector<double>& times, double t_max) {
  if (samples.empty())
    throw std::invalid_argument("survival_curve: empty ensemble");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0))
      throw std::invalid_argument("survival_curve: negative time");
    if (times[i] > t_max)
      throw std::invalid_argument("survival_curve: time beyond t_max");
    if (i > 0 && times[i] <= times[i - 1])
      throw std::invalid_argument("survival_curve: times must increase");
  }

  // censored replicates have T > t_max: survivors at every requested time
  std::vector<double> sorted;
  sorted.reserve(samples.size());
  for (const auto& s : samples)
    sorted.push_back(s.censored ? std::numeric_limits<double>::infinity()
                                : s.t_cross);
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(samples.size());
  SurvivalCurve out;
  out.times = times;
  out.n = samples.size();
  out.s_hat.reserve(times.size());
  out.se.reserve(times.size());
  for (double t : times) {
    // survivors: t_cross > t, with censored entries sitting at t_max >= t
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    const double surv = static_cast<double>(sorted.end() - it);
    const double p = surv / n;
    out.s_hat.push_back(p);
    out.se.push_back(std::sqrt(p * (1.0 - p) / n));
  }
  return out;
}

TailFit fit_tail_exponent(const SurvivalCurve& curve, double window_lo,
                          double window_hi) {
  if (!(window_lo >= 1.0))
    throw std::invalid_argument("fit_tail_exponent: window_lo < 1");
  if (!(window_hi > window_lo))
    throw std::invalid_argument("fit_tail_exponent: degenerate window");

  std::vector<double> lt, ls, w;
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    const double t = curve.times[i];
    if (t < window_lo || t > window_hi) continue;
    const double p = curve.s_hat[i];
    if (!(p > 0.0))
      throw std::invalid_argument("fit_tail_exponent: s_hat <= 0 in window");
    lt.push_back(std::log(t));
    ls.push_back(std::log(p));
    // var(ln s_hat) = (se / s_hat)^2 by the delta method
    const double se_log = curve.se[i] > 0.0 ? curve.se[i] / p : 1e-12;
    w.push_back(1.0 / (se_log * se_log));
  }
  if (lt.size() < 8)
    throw std::invalid_argument(
        "fit_tail_exponent: fewer than 8 curve points in window");

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sw += w[i];
    sx += w[i] * lt[i];
    sy += w[i] * ls[i];
    sxx += w[i] * lt[i] * lt[i];
    sxy += w[i] * lt[i] * ls[i];
  }
  const double det = sw * sxx - sx * sx;
  if (det == 0.0)
    throw std::invalid_argument("fit_tail_exponent: all-equal times");
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / sw;

  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / sw;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    const double r = ls[i] - (intercept + slope * lt[i]);
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (ls[i] - mean_y) * (ls[i] - mean_y);
  }
  const double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

  return {window_lo, window_hi, -slope, intercept, r2};
}

std::vector<MellinEstimate> mellin_xt(const std::vector<CrossingSample>& samples,
                                      const std::vector<double>& s_list,
                                      const ProcessParams& params,
                                      const StartState& start) {
  params.validate();
  start.validate();
  if (start.x != 0.0)
    throw std::invalid_argument("mellin_xt: requires start.x == 0");
  if (samples.empty()) throw std::invalid_argument("mellin_xt: empty ensemble");

  const double th = theta::find_theta(params).theta;
  for (double s : s_list) {
    if (!(s >= 0.0 && s < th)) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "mellin_xt: s = %g outside [0, theta) with theta = %.12g",
                    s, th);
      throw std::invalid_argument(msg);
    }
  }

  std::vector<double> xs;
  xs.reserve(samples.size());
  for (const auto& smp : samples)
    if (!smp.censored) xs.push_back(smp.x_at_cross);
  if (xs.empty())
    throw std::invalid_argument("mellin_xt: every replicate censored");

  std::vector<MellinEstimate> out;
  out.reserve(s_list.size());
  const double n = static_cast<double>(xs.size());
  for (double s : s_list) {
    double sum = 0.0, sum2 = 0.0;
    for (double x : xs) {
      const double v = s == 0.0 ? 1.0 : std::pow(x, s);
      sum += v;
      sum2 += v * v;
    }
    const double mc = sum / n;
    const double var = std::max(0.0, sum2 / n - mc * mc);
    const double mc_se = std::sqrt(var / n);
    const double closed =
        std::pow(start.y / 2.0, s) / theta::f_ab(params, s);
    out.push_back({s, mc, mc_se, closed});
  }
  return out;
}

MeanT mean_t(const std::vector<CrossingSample>& samples,
             const ProcessParams& params, const StartState& start,
             double t_max) {
  params.validate();
  start.validate();
  if (!(params.alpha > params.beta))
    throw std::invalid_argument(
        "mean_t: requires alpha > beta (mean of T is infinite otherwise)");
  if (samples.empty()) throw std::invalid_argument("mean_t: empty ensemble");

  const double n = static_cast<double>(samples.size());
  double sum = 0.0, sum2 = 0.0, cens = 0.0;
  for (const auto& s : samples) {
    const double t = s.censored ? t_max : s.t_cross;
    sum += t;
    sum2 += t * t;
    if (s.censored) cens += 1.0;
  }
  const double raw = sum / n;
  const double var = std::max(0.0, sum2 / n - raw * raw);
  const double se = std::sqrt(var / n);
  const double cfrac = cens / n;

  // Power tail P(T > t) ~ c t^{-theta}: the mass beyond t_max adds
  // cfrac * t_max / (theta - 1) on top of the truncated mean.
  const double th = theta::find_theta(params).theta;
  double completed = raw;
  if (cfrac > 0.0 && th > 1.0) completed += cfrac * t_max / (th - 1.0);
  return {completed, se, raw, cfrac};
}

MomentT moment_t(const std::vector<CrossingSample>& samples, double lambda,
                 double t_max) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("moment_t: lambda < 0");
  if (samples.empty()) throw std::invalid_argument("moment_t: empty ensemble");

  auto accum = [&](double horizon, double& mean, double& se) {
    double sum = 0.0, sum2 = 0.0, n = 0.0;
    for (const auto& s : samples) {
      if (s.censored || s.t_cross > horizon) continue;
      const double v = lambda == 0.0 ? 1.0 : std::pow(s.t_cross, lambda);
      sum += v;
      sum2 += v * v;
      n += 1.0;
    }
    if (n == 0.0) {
      mean = 0.0;
      se = 0.0;
      return;
    }
    mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    se = std::sqrt(var / n);
  };

  double full, full_se, half, half_se;
  accum(t_max, full, full_se);
  accum(t_max / 2.0, half, half_se);

  bool diverged = false;
  if (full > 0.0 && std::abs(full - half) > 0.5 * full) diverged = true;
  return {full, full_se, diverged};
}

std::string survival_csv(const SurvivalCurve& curve) {
  std::string out = "t,s_hat,se,n\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%zu\n", curve.times[i],
                  curve.s_hat[i], curve.se[i], curve.n);
    out += buf;
  }
  return out;
}

std::string mellin_csv(const std::vector<MellinEstimate>& rows) {
  std::string out = "s,mc,mc_se,closed\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.s, r.mc,
                  r.mc_se, r.closed);
    out += buf;
  }
  return out;
}

std::string tailfit_csv(const TailFit& fit) {
  char buf[220];
  std::snprintf(buf, sizeof(buf), "window_lo,window_hi,exponent,r_squared\n%.17g,%.17g,%.17g,%.17g\n",
                fit.window_lo, fit.window_hi, fit.exponent, fit.r_squared);
  return buf;
}

}  // namespace pursuit::estimate
