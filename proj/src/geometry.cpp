#include "bergman/geometry.hpp"

#include <cmath>

#include "bergman/rng.hpp"

namespace bergman {

Complex bergman_kernel(const VectorXc& w, const VectorXc& z, int N) {
  return ipow(Complex(1.0) - w.dot(z), -N);
}

MetricAtPoint metric(const VectorXc& z) {
  const int m = static_cast<int>(z.size());
  const double den = 1.0 - z.squaredNorm();
  if (den <= 0.0) throw DomainError("metric: point outside the unit ball");
  MetricAtPoint out;
  out.z = z;
  out.g = MatrixXc::Identity(m, m) / den + z * z.adjoint() / (den * den);
  out.ginv = den * (MatrixXc::Identity(m, m) - z * z.adjoint());
  return out;
}

namespace {

using RealField = std::function<double(const VectorXc&)>;

// Real-coordinate displacement: coordinate 2i is Re z_i, 2i+1 is Im z_i.
VectorXc displace(const VectorXc& z, int coord, double h) {
  VectorXc out = z;
  if (coord % 2 == 0)
    out(coord / 2) += h;
  else
    out(coord / 2) += Complex(0.0, h);
  return out;
}

double second_derivative(const RealField& f, const VectorXc& z, int ca,
                         int cb, double h, double f0) {
  if (ca == cb)
    return (f(displace(z, ca, h)) - 2.0 * f0 + f(displace(z, ca, -h))) /
           (h * h);
  return (f(displace(displace(z, ca, h), cb, h)) -
          f(displace(displace(z, ca, h), cb, -h)) -
          f(displace(displace(z, ca, -h), cb, h)) +
          f(displace(displace(z, ca, -h), cb, -h))) /
         (4.0 * h * h);
}

MatrixXc hessian_at_step(const RealField& f, const VectorXc& z, double h) {
  const int m = static_cast<int>(z.size());
  const double f0 = f(z);
  MatrixXc out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double dxx = second_derivative(f, z, 2 * i, 2 * j, h, f0);
      const double dyy = second_derivative(f, z, 2 * i + 1, 2 * j + 1, h, f0);
      const double dyx = second_derivative(f, z, 2 * i + 1, 2 * j, h, f0);
      const double dxy = second_derivative(f, z, 2 * i, 2 * j + 1, h, f0);
      // ∂_{z̄_i} ∂_{z_j} = (1/4)[(∂x_i ∂x_j + ∂y_i ∂y_j)
      //                          + i(∂y_i ∂x_j - ∂x_i ∂y_j)].
      out(i, j) = 0.25 * Complex(dxx + dyy, dyx - dxy);
    }
  return out;
}

}  // namespace

MatrixXc complex_hessian_fd(const RealField& f, const VectorXc& z, double step,
                            int levels, double* richardson_error) {
  // Romberg table: row l uses step/2^l; after sweep k the surviving entries
  // are O(h^{2(k+1)}).
  std::vector<MatrixXc> row;
  for (int l = 0; l <= levels; ++l)
    row.push_back(hessian_at_step(f, z, step / std::pow(2.0, l)));
  MatrixXc prev = row.back();
  for (int k = 1; k <= levels; ++k) {
    prev = row[levels];
    const double w = std::pow(4.0, k);
    for (int l = levels; l >= k; --l)
      row[l] = (w * row[l] - row[l - 1]) / (w - 1.0);
  }
  if (richardson_error)
    *richardson_error = levels > 0 ? (row[levels] - prev).norm() : 0.0;
  return row[levels];
}

MatrixXc metric_fd(const VectorXc& z, int N, double step) {
  const auto log_kernel = [N](const VectorXc& p) {
    return -static_cast<double>(N) * std::log(1.0 - p.squaredNorm());
  };
  return complex_hessian_fd(log_kernel, z, step, 1) / static_cast<double>(N);
}

RicciResult ricci(const VectorXc& z, double step) {
  const auto log_det_g = [](const VectorXc& p) {
    return std::log(metric(p).g.determinant().real());
  };
  RicciResult out;
  out.ricci = -complex_hessian_fd(log_det_g, z, step, 2,
                                  &out.richardson_error);
  out.converged = out.richardson_error < 1e-4;
  return out;
}

double einstein_residual(const VectorXc& z, ScalarConvention conv) {
  const int m = static_cast<int>(z.size());
  const MetricAtPoint mp = metric(z);
  const RicciResult rc = ricci(z);
  const double scalar = conv == ScalarConvention::kEinsteinConstant
                            ? -(m + 1.0)
                            : -m * (m + 1.0);
  const double lambda = (m + 1.0) / 2.0;
  return (rc.ricci - 0.5 * scalar * mp.g + lambda * mp.g).norm();
}

MeasureSpec measure_spec(int N, int m) {
  if (m != 1 && m != 2) throw ConfigError("measure_spec: m must be 1 or 2");
  if (N < m + 1)
    throw ConfigError("measure_spec: N >= m+1 required, got N = " +
                      std::to_string(N));
  MeasureSpec spec;
  spec.N = N;
  spec.m = m;
  spec.exponent = N - (m + 1);
  spec.c_n = (m == 2) ? (N - 1.0) * (N - 2.0) / (M_PI * M_PI)
                      : (N - 1.0) / M_PI;
  return spec;
}

namespace {
double ball_volume(int m) { return m == 1 ? M_PI : M_PI * M_PI / 2.0; }
}  // namespace

McEstimate measure_normalization(int N, int m, std::uint64_t n_samples,
                                 std::uint64_t seed) {
  const MeasureSpec spec = measure_spec(N, m);
  Rng rng(seed);
  const double vol = ball_volume(m);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const VectorXc z = rng.ball_point(m);
    const double w =
        spec.c_n * std::pow(1.0 - z.squaredNorm(), spec.exponent);
    sum += w;
    sum2 += w * w;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum2 / n - mean * mean);
  return McEstimate{vol * mean, vol * std::sqrt(var / n), n_samples};
}

Complex HoloPolynomial::operator()(const VectorXc& z) const {
  Complex acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    Complex term = c * ipow(z(0), k[0]);
    if (m == 2) term *= ipow(z(1), k[1]);
    acc += term;
  }
  return acc;
}

HoloPolynomial HoloPolynomial::monomial(int m, int k1, int k2, Complex coeff) {
  HoloPolynomial p;
  p.m = m;
  p.coeffs[{k1, m == 2 ? k2 : 0}] = coeff;
  return p;
}

namespace {

// Shared weighted MC loop: accumulates c_N (1-|z|^2)^{N-m-1} * h(z).
McComplexEstimate weighted_mc(int N, int m, std::uint64_t n_samples,
                              std::uint64_t seed,
                              const std::function<Complex(const VectorXc&)>& h) {
  const MeasureSpec spec = measure_spec(N, m);
  Rng rng(seed);
  const double vol = ball_volume(m);
  Complex sum = 0.0;
  double sum2 = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const VectorXc z = rng.ball_point(m);
    const Complex w =
        spec.c_n * std::pow(1.0 - z.squaredNorm(), spec.exponent) * h(z);
    sum += w;
    sum2 += std::norm(w);
  }
  const double n = static_cast<double>(n_samples);
  const Complex mean = sum / n;
  const double var = std::max(0.0, sum2 / n - std::norm(mean));
  return McComplexEstimate{vol * mean, vol * std::sqrt(var / n), n_samples};
}

}  // namespace

McComplexEstimate inner_product(const HoloPolynomial& f,
                                const HoloPolynomial& g, int N,
                                std::uint64_t n_samples, std::uint64_t seed) {
  if (f.m != g.m) throw DomainError("inner_product: mixed m");
  return weighted_mc(N, f.m, n_samples, seed, [&](const VectorXc& z) {
    return std::conj(f(z)) * g(z);
  });
}

McComplexEstimate reproducing_check(const HoloPolynomial& f, const VectorXc& w,
                                    int N, std::uint64_t n_samples,
                                    std::uint64_t seed) {
  return weighted_mc(N, f.m, n_samples, seed, [&](const VectorXc& z) {
    return std::conj(bergman_kernel(w, z, N)) * f(z);
  });
}

MoebiusImage moebius(const GroupElement& g, const VectorXc& z) {
  const int m = g.m();
  if (z.size() != m) throw DomainError("moebius: dimension mismatch");
  const Complex denom =
      (g.entries.bottomLeftCorner(1, m) * z)(0, 0) + g.entries(m, m);
  if (std::abs(denom) < 1e-14)
    throw InternalError("moebius: vanishing denominator on the domain");
  MoebiusImage out;
  out.zprime = (g.entries.topLeftCorner(m, m) * z +
                g.entries.topRightCorner(m, 1)) /
               denom;
  out.jfactor = denom;
  return out;
}

Complex discrete_series_eval(const GroupElement& g, const HoloPolynomial& f,
                             int N, const VectorXc& z) {
  if (z.squaredNorm() >= 1.0)
    throw DomainError("discrete_series_eval: evaluation outside the ball");
  const MoebiusImage img = moebius(g, z);
  return ipow(img.jfactor, -N) * f(img.zprime);
}

std::function<Complex(const VectorXc&)> discrete_series_apply(
    const GroupElement& g, const HoloPolynomial& f, int N) {
  return [g, f, N](const VectorXc& z) {
    return discrete_series_eval(g, f, N, z);
  };
}

}  // namespace bergman
