#ifndef PURSUIT_THETA_HPP
#define PURSUIT_THETA_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/specialfn.hpp"

namespace pursuit::theta {

// Dimensions of the lower (alpha) and upper (beta) squared Bessel process.
struct ProcessParams {
  double alpha;
  double beta;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("ProcessParams: alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("ProcessParams: beta must be >= 0");
  }
};

struct ThetaResult {
  double theta = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  int zero_order_m = 1;
  bool m_undetermined = false;  // |F'(theta)| below threshold; m >= 2 possible
  int iterations = 0;
};

// F_{alpha,beta}(s) = 2F1((alpha+beta)/2 - 1 + s, -s; alpha/2; 1/2).
double f_ab(const ProcessParams& params, double s,
            const specialfn::SeriesControl& ctl = {});

// Closed form of F_{alpha,beta}(s) for the three special families
// alpha == beta, alpha + beta == 4, alpha == beta + 2 (within 1e-12).
// Empty for all other parameter pairs.
std::optional<double> f_ab_closed(const ProcessParams& params, double s);

// First positive zero of F_{alpha,beta}, bracketed to width
// 1e-13 * max(1, theta).
ThetaResult find_theta(const ProcessParams& params, double scan_step = 0.05);

struct ThetaGridCell {
  double alpha;
  double beta;
  double theta;
};

// Row-major grid of theta: alpha in [a_lo, a_hi], beta in [b_lo, b_hi],
// both stepped by `step` (endpoints inclusive).  Cells may be evaluated on
// several threads; the row order is fixed.
std::vector<ThetaGridCell> theta_grid(double a_lo, double a_hi, double b_lo,
                                      double b_hi, double step,
                                      int threads = 1);

// Small-alpha asymptotics of theta(alpha, beta).
double theta_small_alpha(double beta, double alpha);

// 17-significant-digit CSV (header `alpha,beta,theta`).
std::string grid_csv(const std::vector<ThetaGridCell>& grid);

}  // namespace pursuit::theta

#endif
