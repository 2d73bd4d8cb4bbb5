#ifndef PURSUIT_QUADCHECK_HPP
#define PURSUIT_QUADCHECK_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/besq.hpp"

namespace pursuit::quadcheck {

struct ComplexIntegralSpec {
  double gamma_exp;
  double lambda_exp;
  double mu_exp;

  void validate() const {
    if (!(lambda_exp > 0.0 && mu_exp > 0.0))
      throw std::invalid_argument("ComplexIntegralSpec: lambda, mu must be > 0");
    if (!(gamma_exp > 0.0 && gamma_exp < lambda_exp + mu_exp))
      throw std::invalid_argument(
          "ComplexIntegralSpec: requires 0 < gamma < lambda + mu");
  }
};

// integral_0^inf xi^{gamma-1} (1-2i xi)^{-lambda} (1+2i xi)^{-mu} dxi,
// computed after xi = tan(u)/2 with double-exponential nodes on (0, pi/2).
std::complex<double> integral_numeric(const ComplexIntegralSpec& spec,
                                      double tol = 1e-10);

// Closed form: Gamma(gamma)Gamma(mu+lambda-gamma)/(Gamma(lambda)Gamma(mu))
// times the two-term 2F1(.;.;1/2) combination, with
// (+-2i)^{-gamma} = 2^{-gamma} e^{-+ i pi gamma / 2}.
// Refuses gamma within 1e-8 of a positive integer (Beta-factor pole).
std::complex<double> integral_closed(const ComplexIntegralSpec& spec);

struct GaucheCheck {
  double lhs;
  double rhs;
};

// Im(i * integral) at gamma = 1 against the Gamma-product value.
// Requires nu in (0, 1) and nu < (alpha + beta) / 2.
GaucheCheck gauche_identity_check(double alpha, double beta, double nu,
                                  double tol = 1e-10);

struct RatePoint {
  double t;
  double p_hat;
  double t_ln_p;   // t * ln P_hat(tau <= t)
  bool usable;     // false when P_hat == 0
};

// MC check of the short-time rate t ln P(tau <= t) -> -(sqrt z0 - sqrt a)^2/2.
// t_list must be decreasing; one ensemble at the largest horizon serves all t.
std::vector<RatePoint> short_time_rate_check(double dim, double z0,
                                             double level,
                                             const std::vector<double>& t_list,
                                             double dt, std::size_t replicates,
                                             std::uint64_t seed,
                                             int threads = 1);

double short_time_rate_limit(double z0, double level);

struct SweepRow {
  double gamma;
  double lambda;
  double mu;
  std::complex<double> numeric;
  std::complex<double> closed;
  double relerr;
};

// Random sweep of valid (gamma, lambda, mu) with gamma kept 0.05 away
// from integers; compares integral_closed against integral_numeric.
std::vector<SweepRow> random_sweep(int points, std::uint64_t seed,
                                   double tol = 1e-10);

// `gamma,lambda,mu,numeric_re,numeric_im,closed_re,closed_im,relerr`
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace pursuit::quadcheck

#endif
