// bergman: shared scalar/matrix aliases and small numeric helpers.
#ifndef BERGMAN_TYPES_HPP
#define BERGMAN_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bergman {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using MatrixXr = Eigen::MatrixXd;
using VectorXr = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.1.0";

/// Indefinite metric Γ = diag(1,...,1,-1) on C^(m+1).
inline MatrixXc gamma_metric(int m) {
  MatrixXc g = MatrixXc::Identity(m + 1, m + 1);
  g(m, m) = -1.0;
  return g;
}

/// Integer power of a complex number (binary exponentiation; n may be negative).
inline Complex ipow(Complex base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  Complex r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// Error categories used across the library.  Configuration problems (bad m,
// N below the series bound, malformed config) and domain violations map to
// exit code 2 in the CLI; internal errors indicate a broken invariant.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace bergman

#endif
