// bergman: classical geometry of the unit-ball domain.
//
// Bergman kernel K(w^†, z) = (1 - w^† z)^{-N} (integer N, single valued);
// Kaehler metric g = I/(1-|z|^2) + z z^†/(1-|z|^2)^2 with inverse
// (1-|z|^2)(I - z z^†); Ricci tensor R = -(m+1) g.  The vacuum Einstein
// equation R_ij - (1/2) g_ij R + Λ g_ij = 0 balances with Λ = (m+1)/2 and
// the scalar pinned to R = -(m+1); the contraction g^{ij} R_ij of the
// Ricci tensor equals -m(m+1), so the scalar convention is selectable and
// reported rather than guessed.
//
// Monte-Carlo integrals use uniform rejection sampling on the ball with the
// seeded generator from rng.hpp; estimates are deterministic per seed.
#ifndef BERGMAN_GEOMETRY_HPP
#define BERGMAN_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <map>

#include "bergman/lie_algebra.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// (1 - w^† z)^{-N} for |w|, |z| < 1.
Complex bergman_kernel(const VectorXc& w, const VectorXc& z, int N);

struct MetricAtPoint {
  VectorXc z;
  MatrixXc g;     // g_{i j̄}, Hermitian positive definite
  MatrixXc ginv;  // g^{i j̄}
};
MetricAtPoint metric(const VectorXc& z);

/// Second mixed complex derivatives H_ij = ∂_{z̄_i} ∂_{z_j} F of a real
/// scalar field, Richardson-extrapolated central differences.  The optional
/// output reports the difference of the last two extrapolation levels.
MatrixXc complex_hessian_fd(const std::function<double(const VectorXc&)>& f,
                            const VectorXc& z, double step, int levels = 2,
                            double* richardson_error = nullptr);

/// (1/N) ∂∂̄ log K by finite differences; cross-validates metric().
MatrixXc metric_fd(const VectorXc& z, int N, double step = 1e-4);

struct RicciResult {
  MatrixXc ricci;  // R_{i j̄} = -∂∂̄ log det g (numerical)
  double richardson_error = 0.0;
  bool converged = true;
};
RicciResult ricci(const VectorXc& z, double step = 1e-3);

enum class ScalarConvention {
  kEinsteinConstant,  // R = -(m+1), the value that balances the equation
  kContracted,     // R = g^{ij} R_ij = -m(m+1)
};

/// Frobenius norm of R_ij - (1/2) g_ij R + Λ g_ij with Λ = (m+1)/2.
double einstein_residual(const VectorXc& z,
                         ScalarConvention conv = ScalarConvention::kEinsteinConstant);

struct MeasureSpec {
  int N = 0;
  int m = 0;
  double c_n = 0.0;  // normalization constant of dμ_N
  int exponent = 0;  // N - (m+1)
};
/// m=2: c_N = (N-1)(N-2)/π²; m=1: c_N = (N-1)/π.
MeasureSpec measure_spec(int N, int m);

struct McEstimate {
  double value = 0.0;
  double stderror = 0.0;
  std::uint64_t samples = 0;
};
/// Monte-Carlo estimate of ∫ dμ_N over the ball; expect 1.
McEstimate measure_normalization(int N, int m, std::uint64_t n_samples,
                                 std::uint64_t seed);

/// Finitely supported holomorphic polynomial; multi-indices (k1, k2) with
/// k2 = 0 when m == 1.
struct HoloPolynomial {
  int m = 2;
  std::map<std::array<int, 2>, Complex> coeffs;
  Complex operator()(const VectorXc& z) const;
  static HoloPolynomial monomial(int m, int k1, int k2 = 0,
                                 Complex coeff = 1.0);
};

struct McComplexEstimate {
  Complex value;
  double stderror = 0.0;
  std::uint64_t samples = 0;
};
/// (f, g)_N = ∫ dμ_N conj(f) g by Monte Carlo.
McComplexEstimate inner_product(const HoloPolynomial& f,
                                const HoloPolynomial& g, int N,
                                std::uint64_t n_samples, std::uint64_t seed);
/// (K_w, f)_N, expected to reproduce f(w).
McComplexEstimate reproducing_check(const HoloPolynomial& f, const VectorXc& w,
                                    int N, std::uint64_t n_samples,
                                    std::uint64_t seed);

struct MoebiusImage {
  VectorXc zprime;  // (A z + B)(C z + d)^{-1}
  Complex jfactor;  // C z + d (scalar for column Z)
};
MoebiusImage moebius(const GroupElement& g, const VectorXc& z);

/// T_N(g) f at z: [j(g,z)]^{-N} f(g·z) with the blocks of g as given.
/// Composition obeys T(g1)(T(g2) f) = T(g2 g1) f (right action).
Complex discrete_series_eval(const GroupElement& g, const HoloPolynomial& f,
                             int N, const VectorXc& z);
std::function<Complex(const VectorXc&)> discrete_series_apply(
    const GroupElement& g, const HoloPolynomial& f, int N);

}  // namespace bergman

#endif
