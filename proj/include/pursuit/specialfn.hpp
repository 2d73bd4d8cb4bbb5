#ifndef PURSUIT_SPECIALFN_HPP
#define PURSUIT_SPECIALFN_HPP

#include <stdexcept>

namespace pursuit::specialfn {

// Truncation policy for the hypergeometric series.
struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1e-3))
      throw std::invalid_argument("SeriesControl: rel_tol out of (0, 1e-3)");
    if (max_terms < 64)
      throw std::invalid_argument("SeriesControl: max_terms < 64");
  }
};

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
// Overflow shows up as +-inf, callers needing large n work in log space.
double pochhammer(double a, int n);

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// 1/Gamma(x) for any real x (entire function; zero at the poles of Gamma).
double rgamma(double x);

// Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x > 0, y > 0.
double beta(double x, double y);

// Gauss hypergeometric series 2F1(a, b; c; 1/2).
// Symmetric in (a, b) by construction. c must not be a nonpositive integer
// unless the series terminates first.
double hyp2f1_half(double a, double b, double c, const SeriesControl& ctl = {});

// Modified Bessel function of the first kind, z >= 0, nu > -1.
double bessel_i(double nu, double z);

// Modified Bessel function of the second kind, z > 0.
// Integer orders are handled by evaluating at nu +- 1e-4 and averaging.
double bessel_k(double nu, double z);

}  // namespace pursuit::specialfn

#endif
