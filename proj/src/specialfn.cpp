#include "pursuit/specialfn.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "pursuit/errors.hpp"

namespace pursuit::specialfn {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) <= tol;
}

// Ascending series for I_nu, stable for any z (all terms share a sign
// once k exceeds |nu|).  Long double keeps enough headroom for the
// K_nu difference formula up to its asymptotic crossover.
long double bessel_i_series(long double nu, long double z) {
  if (z == 0.0L) {
    if (nu == 0.0L) return 1.0L;
    return nu > 0.0L ? 0.0L : std::numeric_limits<long double>::infinity();
  }
  long double term;
  if (nu + 1.0L > 0.5L) {
    term = std::exp(nu * std::log(z / 2.0L) - std::lgamma(nu + 1.0L));
  } else {
    term = std::pow(z / 2.0L, nu) / std::tgamma(nu + 1.0L);
  }
  long double sum = term;
  const long double q = z * z / 4.0L;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<long double>(k) * (nu + k));
    sum += term;
    if (std::abs(term) <= 1e-20L * std::abs(sum)) break;
  }
  return sum;
}

// Large-argument asymptotics; sign = -1 selects the alternating (I) series,
// sign = +1 the K series.  Truncated at the smallest term.
long double bessel_asymptotic_sum(long double nu, long double z, int sign) {
  const long double mu = 4.0L * nu * nu;
  long double term = 1.0L, sum = 1.0L, prev = std::numeric_limits<long double>::max();
  for (int k = 1; k <= 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= sign * (mu - odd * odd) / (8.0L * k * z);
    if (std::abs(term) >= prev) break;
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) <= 1e-20L * std::abs(sum)) break;
  }
  return sum;
}

long double bessel_i_ld(long double nu, long double z) {
  if (z < 100.0L) return bessel_i_series(nu, z);
  return std::exp(z) / std::sqrt(2.0L * static_cast<long double>(kPi) * z) *
         bessel_asymptotic_sum(nu, z, -1);
}

long double bessel_k_noninteger(long double nu, long double z) {
  nu = std::abs(nu);
  if (z > 12.5L) {
    return std::sqrt(static_cast<long double>(kPi) / (2.0L * z)) * std::exp(-z) *
           bessel_asymptotic_sum(nu, z, +1);
  }
  const long double s = std::sin(static_cast<long double>(kPi) * nu);
  return static_cast<long double>(kPi) / 2.0L *
         (bessel_i_series(-nu, z) - bessel_i_series(nu, z)) / s;
}

}  // namespace

double pochhammer(double a, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

double rgamma(double x) {
  if (x > 0.5) return std::exp(-std::lgamma(x));
  if (x <= 0.0 && near_integer(x)) return 0.0;  // pole of Gamma
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double s = std::sin(kPi * x);
  if (s == 0.0) return 0.0;
  const double lg = std::lgamma(1.0 - x);
  return s * std::exp(lg) / kPi;
}

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("beta: requires x, y > 0");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double hyp2f1_half(double a, double b, double c, const SeriesControl& ctl) {
  ctl.validate();
  if (c <= 0.0 && near_integer(c)) {
    // allowed only when the series terminates before (c)_n picks up the zero
    const bool a_term = a <= 0.0 && near_integer(a);
    const bool b_term = b <= 0.0 && near_integer(b);
    const double stop = std::min(a_term ? -std::round(a) : 1e300,
                                 b_term ? -std::round(b) : 1e300);
    if (!(stop <= -std::round(c)))
      throw PoleError("hyp2f1_half: c is a nonpositive integer");
  }
  double term = 1.0, sum = 1.0, scale = 1.0;
  int small_run = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * 0.5;
    if (term == 0.0) return sum;  // series terminated exactly
    sum += term;
    if (std::abs(sum) > scale) scale = std::abs(sum);
    const double thresh =
        std::max(ctl.rel_tol * std::abs(sum),
                 std::numeric_limits<double>::epsilon() * scale);
    small_run = std::abs(term) <= thresh ? small_run + 1 : 0;
    if (small_run >= 3) return sum;
  }
  throw NonConvergenceError("hyp2f1_half: series did not converge",
                            std::abs(term / sum));
}

double bessel_i(double nu, double z) {
  if (z < 0.0) throw std::domain_error("bessel_i: requires z >= 0");
  if (nu <= -1.0) throw std::domain_error("bessel_i: requires nu > -1");
  return static_cast<double>(bessel_i_ld(nu, z));
}

double bessel_k(double nu, double z) {
  if (!(z > 0.0)) throw std::domain_error("bessel_k: requires z > 0");
  nu = std::abs(nu);  // K is even in nu
  if (near_integer(nu, 1e-6)) {
    const long double n0 = std::round(nu), h = 1e-4L;
    return static_cast<double>(
        0.5L * (bessel_k_noninteger(n0 + h, z) + bessel_k_noninteger(n0 - h, z)));
  }
  return static_cast<double>(bessel_k_noninteger(nu, z));
}

}  // namespace pursuit::specialfn
