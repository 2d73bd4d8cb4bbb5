#include "pursuit/theta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "pursuit/errors.hpp"

namespace pursuit::theta {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kScanLimit = 200.0;

using specialfn::rgamma;

double sqrt_pi() { return std::sqrt(kPi); }

}  // namespace

double f_ab(const ProcessParams& params, double s,
            const specialfn::SeriesControl& ctl) {
  params.validate();
  if (!(s >= 0.0)) throw std::invalid_argument("f_ab: requires s >= 0");
  return specialfn::hyp2f1_half((params.alpha + params.beta) / 2.0 - 1.0 + s,
                                -s, params.alpha / 2.0, ctl);
}

std::optional<double> f_ab_closed(const ProcessParams& params, double s) {
  params.validate();
  const double a = params.alpha, b = params.beta;
  const double g = std::exp(std::lgamma(a / 2.0));
  if (std::abs(a - b) <= 1e-12) {
    return sqrt_pi() * g * rgamma((1.0 - s) / 2.0) * rgamma((s + a) / 2.0);
  }
  if (std::abs(a + b - 4.0) <= 1e-12) {
    return std::pow(2.0, 1.0 - a / 2.0) * sqrt_pi() * g *
           rgamma((2.0 + 2.0 * s + a) / 4.0) * rgamma((a - 2.0 * s) / 4.0);
  }
  if (std::abs(a - b - 2.0) <= 1e-12) {
    const double gb = std::exp(std::lgamma(b / 2.0 + 1.0));
    return 2.0 * sqrt_pi() / (b + 2.0 * s) * gb *
           (rgamma((b + s) / 2.0) * rgamma((1.0 - s) / 2.0) -
            rgamma((b + s + 1.0) / 2.0) * rgamma(-s / 2.0));
  }
  return std::nullopt;
}

ThetaResult find_theta(const ProcessParams& params, double scan_step) {
  params.validate();
  if (!(scan_step > 0.0)) throw std::invalid_argument("find_theta: scan_step <= 0");

  auto F = [&](double s) { return f_ab(params, s); };

  // F(0) = 1; walk right to the first nonpositive value.
  double lo = 0.0, flo = 1.0, hi = 0.0, fhi = 1.0;
  bool bracketed = false;
  for (double s = scan_step; s <= kScanLimit; s += scan_step) {
    const double f = F(s);
    if (f <= 0.0) {
      hi = s;
      fhi = f;
      bracketed = true;
      break;
    }
    lo = s;
    flo = f;
  }
  if (!bracketed)
    throw SearchExhaustedError("find_theta: no sign change up to s = 200");

  // bisection with a secant proposal whenever it lands inside the bracket
  ThetaResult out;
  int it = 0;
  while (hi - lo > 1e-13 * std::max(1.0, hi) && it < 200) {
    double mid = 0.5 * (lo + hi);
    if (fhi != flo) {
      const double sec = hi - fhi * (hi - lo) / (fhi - flo);
      const double margin = 0.05 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) mid = sec;
    }
    const double fm = F(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    ++it;
  }

  out.theta = 0.5 * (lo + hi);
  if (std::abs(params.alpha - params.beta) <= 1e-12) out.theta = 1.0;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.iterations = it;
  out.residual = std::abs(F(out.theta));

  // zero order: 5-point derivative; a flat tangent flags a possible m >= 2
  const double h = 1e-5;
  const double d = (F(out.theta - 2 * h) - 8.0 * F(out.theta - h) +
                    8.0 * F(out.theta + h) - F(out.theta + 2 * h)) /
                   (12.0 * h);
  if (std::abs(d) > 1e-6) {
    out.zero_order_m = 1;
    out.m_undetermined = false;
  } else {
    out.zero_order_m = 2;
    out.m_undetermined = true;
  }
  return out;
}

std::vector<ThetaGridCell> theta_grid(double a_lo, double a_hi, double b_lo,
                                      double b_hi, double step, int threads) {
  if (!(step > 0.0)) throw std::invalid_argument("theta_grid: step <= 0");
  if (!(a_lo > 0.0 && b_lo >= 0.0 && a_hi <= 5.0 + 1e-9 && b_hi <= 5.0 + 1e-9))
    throw std::invalid_argument("theta_grid: ranges must sit inside (0, 5]");

  std::vector<double> alphas, betas;
  for (double a = a_lo; a <= a_hi + 1e-9 * step; a += step) alphas.push_back(a);
  for (double b = b_lo; b <= b_hi + 1e-9 * step; b += step) betas.push_back(b);

  std::vector<ThetaGridCell> grid(alphas.size() * betas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (std::size_t j = 0; j < betas.size(); ++j)
      grid[i * betas.size() + j] = {alphas[i], betas[j], 0.0};

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= grid.size()) return;
      grid[k].theta = find_theta({grid[k].alpha, grid[k].beta}).theta;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return grid;
}

double theta_small_alpha(double beta, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("theta_small_alpha: alpha <= 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("theta_small_alpha: beta < 0");
  if (beta > 2.0) return alpha / (std::pow(2.0, beta / 2.0) - 2.0);
  if (beta == 2.0) return std::sqrt(alpha / (2.0 * std::log(2.0)));
  return 1.0 - beta / 2.0 +
         alpha * (1.0 / (2.0 - std::pow(2.0, beta / 2.0)) - 0.5);
}

std::string grid_csv(const std::vector<ThetaGridCell>& grid) {
  std::string out = "alpha,beta,theta\n";
  char buf[128];
  for (const auto& c : grid) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", c.alpha, c.beta,
                  c.theta);
    out += buf;
  }
  return out;
}

}  // namespace pursuit::theta
