#ifndef PURSUIT_VERIFY_HPP
#define PURSUIT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pursuit::verify {

struct CheckRow {
  std::string name;
  double measured;
  double target;
  double band;   // |measured - target| <= band means pass
  bool pass;
};

struct SuiteOptions {
  std::uint64_t seed = 20240915;
  std::size_t replicates = 20000;
  int threads = 1;
  double alpha = 2.0;
  double beta = 2.0;
  // tail-suite fit window; 0 means the default [t_max/100, t_max/10]
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Suites: mellin | tail | charfn | quadrature | asymptotics | hitting.
// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckRow> run_suite(const std::string& suite,
                                const SuiteOptions& opt);

bool all_pass(const std::vector<CheckRow>& rows);

// `check,measured,target,band,pass`
std::string report_csv(const std::vector<CheckRow>& rows);

}  // namespace pursuit::verify

#endif
