#ifndef PURSUIT_ESTIMATE_HPP
#define PURSUIT_ESTIMATE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "pursuit/besq.hpp"
#include "pursuit/theta.hpp"

namespace pursuit::estimate {

using besq::CrossingSample;
using besq::StartState;
using theta::ProcessParams;

struct SurvivalCurve {
  std::vector<double> times;   // increasing, positive
  std::vector<double> s_hat;   // survival estimates in [0, 1]
  std::vector<double> se;      // binomial standard errors
  std::size_t n = 0;
};

struct MellinEstimate {
  double s;
  double mc;       // sample mean of X_T^s over uncensored replicates
  double mc_se;
  double closed;   // (y/2)^s / F_{alpha,beta}(s)
};

struct TailFit {
  double window_lo;
  double window_hi;
  double exponent;   // magnitude of the fitted slope
  double intercept;
  double r_squared;
};

struct MeanT {
  double estimate;        // tail-completed mean
  double se;
  double raw;             // mean of t_cross with censored entries at t_max
  double censored_frac;
};

struct MomentT {
  double estimate;
  double se;
  bool diverged;   // half-horizon recomputation moved by more than 50%
};

// Empirical survival with binomial standard errors.  Censored replicates
// count as survivors (their crossing, if any, is past t_max >= t).
SurvivalCurve survival_curve(const std::vector<CrossingSample>& samples,
                             const std::vector<double>& times, double t_max);

// Weighted least squares of ln s_hat on ln t over [window_lo, window_hi];
// weights are the inverse variances of ln s_hat.
TailFit fit_tail_exponent(const SurvivalCurve& curve, double window_lo,
                          double window_hi);

// Mellin transform of X_T from P_{(0,y)}; each s must lie in [0, theta).
std::vector<MellinEstimate> mellin_xt(const std::vector<CrossingSample>& samples,
                                      const std::vector<double>& s_list,
                                      const ProcessParams& params,
                                      const StartState& start);

// Mean of T, finite only for alpha > beta.  The estimate completes the
// censored tail with the power law of exponent theta(alpha, beta).
MeanT mean_t(const std::vector<CrossingSample>& samples,
             const ProcessParams& params, const StartState& start,
             double t_max);

// Empirical lambda-moment of the uncensored crossing times, with a
// divergence diagnostic from recomputing at half the horizon.
MomentT moment_t(const std::vector<CrossingSample>& samples, double lambda,
                 double t_max);

std::string survival_csv(const SurvivalCurve& curve);
std::string mellin_csv(const std::vector<MellinEstimate>& rows);
std::string tailfit_csv(const TailFit& fit);

}  // namespace pursuit::estimate

#endif
