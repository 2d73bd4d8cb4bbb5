#ifndef PURSUIT_ERRORS_HPP
#define PURSUIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pursuit {

// Thrown when an iterative scheme exhausts its budget without reaching
// its tolerance. carries the error actually achieved.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

// Parameter combination sits on a pole of the formula being evaluated.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root scan ran off the end of its search interval.
class SearchExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pursuit

#endif
