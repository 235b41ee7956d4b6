#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlim {

// Thrown when an iterative numerical scheme fails to reach its tolerance.
// Carries the best estimate achieved so callers can inspect or report it.
class numerical_error : public std::runtime_error {
 public:
  numerical_error(const std::string& what, double partial, double err_estimate)
      : std::runtime_error(what), partial(partial), err_estimate(err_estimate) {}
  double partial;
  double err_estimate;
};

}  // namespace qlim

namespace qlim::quadrature {

struct Result {
  double value;
  double abs_err;    // error estimate, not a bound
  int evaluations;   // integrand calls
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects the interval with the worst
// error estimate until the summed estimate drops below abs_tol. max_depth
// bounds how many times any single subinterval may be halved; the global
// interval budget is generous (the integrands here are smooth). Throws
// numerical_error with the partial estimate attached when either limit is
// hit before the tolerance is met.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth = 60);

struct Node {
  double x;  // abscissa in [-1, 1]
  double w;  // weight
};

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
std::vector<Node> gauss_legendre(int n);

}  // namespace qlim::quadrature
