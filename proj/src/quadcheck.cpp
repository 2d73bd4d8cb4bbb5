#include "pursuit/quadcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pursuit/errors.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/specialfn.hpp"

namespace pursuit::quadcheck {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Tanh-sinh rule on (0, pi/2) for the substituted integrand
//   2^{-g} sin^{g-1}(u) cos^{l+m-g-1}(u) e^{i(l-m)u},
// u = (pi/4)(1 + tanh((pi/2) sinh t)).  Node values are assembled in log
// space from the distance to the nearer endpoint, so the singular tails
// survive far into the double-exponential decay instead of drowning in
// the cancellation of 1 + tanh.
std::complex<double> tanh_sinh(double g, double l, double m, double tol,
                               double& achieved) {
  const double half = kPi / 4.0;
  const double tmax = 7.0;

  auto eval_at = [&](double t) -> std::complex<double> {
    const double sh = (kPi / 2.0) * std::sinh(t);
    const double ash = std::abs(sh);
    const double e2 = std::exp(-2.0 * ash);
    // distance from u to its nearer endpoint, and its log, both stable
    const double ln_d = std::log(2.0 * half) - 2.0 * ash - std::log1p(e2);
    const double d = 2.0 * half * e2 / (1.0 + e2);
    const double ln_cosh_sh = ash + std::log1p(e2) - std::log(2.0);
    const double ln_w = std::log(half * (kPi / 2.0)) +
                        std::log(std::cosh(t)) - 2.0 * ln_cosh_sh;

    // ln sin(d) via ln_d once d is below the sin(d) = d regime
    const double ln_sin_d = d > 1e-8 ? std::log(std::sin(d)) : ln_d;
    const double ln_cos_d = std::log(std::cos(d));
    double ln_su, ln_cu, u;
    if (sh < 0.0) {  // u = d near 0
      ln_su = ln_sin_d;
      ln_cu = ln_cos_d;
      u = d;
    } else {  // u near pi/2: sin u = cos d, cos u = sin d
      ln_su = ln_cos_d;
      ln_cu = ln_sin_d;
      u = 2.0 * half - d;
    }
    const double ln_mag = -g * std::log(2.0) + (g - 1.0) * ln_su +
                          (l + m - g - 1.0) * ln_cu;
    const double ln_tot = ln_w + ln_mag;
    if (ln_tot < -745.0 || !std::isfinite(ln_tot)) return {0.0, 0.0};
    const double mag = std::exp(ln_tot);
    const double ph = (l - m) * u;
    return {mag * std::cos(ph), mag * std::sin(ph)};
  };

  double h = 1.0;
  std::complex<double> sum = eval_at(0.0);
  for (double t = h; t <= tmax; t += h) sum += eval_at(t) + eval_at(-t);
  std::complex<double> integral = h * sum;

  achieved = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    std::complex<double> add{0.0, 0.0};
    for (double t = h; t <= tmax; t += 2.0 * h) add += eval_at(t) + eval_at(-t);
    sum += add;
    const std::complex<double> next = h * sum;
    achieved = std::abs(next - integral) /
               std::max(std::abs(next), std::numeric_limits<double>::min());
    integral = next;
    if (level >= 3 && achieved <= tol) return integral;
  }
  throw NonConvergenceError("integral_numeric: tolerance not reached",
                            achieved);
}

bool near_positive_integer(double g, double tol) {
  const double r = std::round(g);
  return r >= 1.0 && std::abs(g - r) <= tol;
}

}  // namespace

std::complex<double> integral_numeric(const ComplexIntegralSpec& spec,
                                      double tol) {
  spec.validate();
  if (!(tol >= 1e-12))
    throw std::invalid_argument("integral_numeric: tol below 1e-12");
  double achieved = 0.0;
  return tanh_sinh(spec.gamma_exp, spec.lambda_exp, spec.mu_exp, tol,
                   achieved);
}

std::complex<double> integral_closed(const ComplexIntegralSpec& spec) {
  spec.validate();
  const double g = spec.gamma_exp, l = spec.lambda_exp, m = spec.mu_exp;
  if (near_positive_integer(g, 1e-8))
    throw PoleError(
        "integral_closed: gamma at a positive integer (Beta pole); "
        "use the gamma->1 limit identity instead");

  const double pref =
      std::tgamma(g) * std::tgamma(m + l - g) / (std::tgamma(l) * std::tgamma(m));
  const double b1 = std::tgamma(l) * std::tgamma(1.0 - g) / std::tgamma(l + 1.0 - g);
  const double b2 = std::tgamma(m) * std::tgamma(1.0 - g) / std::tgamma(m + 1.0 - g);
  const std::complex<double> ph_minus{std::cos(kPi * g / 2.0),
                                      -std::sin(kPi * g / 2.0)};
  const std::complex<double> ph_plus = std::conj(ph_minus);
  const double two_mg = std::pow(2.0, -g);

  const double h1 = specialfn::hyp2f1_half(1.0 - m, l, l - g + 1.0);
  const double h2 = specialfn::hyp2f1_half(1.0 - l, m, m - g + 1.0);

  const std::complex<double> t1 =
      two_mg * ph_minus * b1 * std::pow(2.0, -l) * h1;
  const std::complex<double> t2 =
      two_mg * ph_plus * b2 * std::pow(2.0, -m) * h2;
  return pref * (t1 + t2);
}

GaucheCheck gauche_identity_check(double alpha, double beta, double nu,
                                  double tol) {
  if (!(alpha > 0.0 && beta >= 0.0))
    throw std::invalid_argument("gauche_identity_check: bad alpha/beta");
  if (!(nu > 0.0 && nu < 1.0 && nu < (alpha + beta) / 2.0))
    throw std::invalid_argument(
        "gauche_identity_check: requires nu in (0,1) and nu < (alpha+beta)/2");

  const ComplexIntegralSpec spec{1.0, alpha / 2.0, beta / 2.0 + 1.0 - nu};
  const std::complex<double> val = integral_numeric(spec, tol);
  const double lhs = (std::complex<double>(0.0, 1.0) * val).imag();
  const double rhs = kPi * std::tgamma((alpha + beta) / 2.0 - nu) /
                     (std::tgamma(alpha / 2.0) *
                      std::tgamma(beta / 2.0 + 1.0 - nu)) *
                     std::pow(2.0, nu - (alpha + beta) / 2.0 - 1.0);
  return {lhs, rhs};
}

double short_time_rate_limit(double z0, double level) {
  const double d = std::sqrt(z0) - std::sqrt(level);
  return -d * d / 2.0;
}

std::vector<RatePoint> short_time_rate_check(double dim, double z0,
                                             double level,
                                             const std::vector<double>& t_list,
                                             double dt, std::size_t replicates,
                                             std::uint64_t seed, int threads) {
  if (z0 == level)
    throw std::invalid_argument("short_time_rate_check: z0 == level");
  if (t_list.empty())
    throw std::invalid_argument("short_time_rate_check: empty t_list");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (!(t_list[i] < t_list[i - 1]))
      throw std::invalid_argument("short_time_rate_check: t_list must decrease");

  const besq::GridPolicy grid{dt, t_list.front(), 0};
  const auto hits =
      besq::run_hitting_ensemble(dim, z0, level, grid, seed, replicates, threads);

  std::vector<RatePoint> out;
  out.reserve(t_list.size());
  for (double t : t_list) {
    std::size_t k = 0;
    for (const auto& h : hits)
      if (!h.censored && h.time <= t) ++k;
    const double p = static_cast<double>(k) / static_cast<double>(replicates);
    if (p > 0.0) {
      out.push_back({t, p, t * std::log(p), true});
    } else {
      out.push_back({t, 0.0, 0.0, false});
    }
  }
  return out;
}

std::vector<SweepRow> random_sweep(int points, std::uint64_t seed, double tol) {
  if (points <= 0) throw std::invalid_argument("random_sweep: points <= 0");
  rng::RandomStream rs(seed, 0);
  std::vector<SweepRow> rows;
  rows.reserve(points);
  while (static_cast<int>(rows.size()) < points) {
    const double l = 0.3 + 2.2 * rs.uniform();
    const double m = 0.3 + 2.2 * rs.uniform();
    const double g = 0.1 + (l + m - 0.2) * rs.uniform();
    if (!(g > 0.0 && g < l + m)) continue;
    if (std::abs(g - std::round(g)) < 0.05) continue;
    // keep the terminating-parameter degeneracies of the 2F1 factors away
    const double c1 = l - g + 1.0, c2 = m - g + 1.0;
    if ((c1 <= 0.0 && std::abs(c1 - std::round(c1)) < 0.05) ||
        (c2 <= 0.0 && std::abs(c2 - std::round(c2)) < 0.05))
      continue;
    const ComplexIntegralSpec spec{g, l, m};
    const std::complex<double> num = integral_numeric(spec, tol);
    const std::complex<double> cls = integral_closed(spec);
    const double rel = std::abs(num - cls) / std::max(std::abs(num), 1e-300);
    rows.push_back({g, l, m, num, cls, rel});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "gamma,lambda,mu,numeric_re,numeric_im,closed_re,closed_im,relerr\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.gamma,
                  r.lambda, r.mu, r.numeric.real(), r.numeric.imag(),
                  r.closed.real(), r.closed.imag(), r.relerr);
    out += buf;
  }
  return out;
}

}  // namespace pursuit::quadcheck
