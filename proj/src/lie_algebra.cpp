#include "bergman/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bergman/matrix_exp.hpp"

namespace bergman {

namespace {
const Complex kI(0.0, 1.0);
}

double gamma_unitarity_residual(const GroupElement& g) {
  const MatrixXc gam = gamma_metric(g.m());
  return (g.entries.adjoint() * gam * g.entries - gam).norm() +
         (g.entries * gam * g.entries.adjoint() - gam).norm();
}

double special_residual(const GroupElement& g) {
  return std::abs(g.entries.determinant() - Complex(1.0));
}

double algebra_condition_residual(const AlgebraElement& x) {
  const MatrixXc gam = gamma_metric(x.m());
  return (x.entries.adjoint() * gam + gam * x.entries).norm();
}

GeneratorBasis build_basis(int m) {
  if (m != 1 && m != 2)
    throw ConfigError("build_basis: m must be 1 or 2, got " +
                      std::to_string(m));
  GeneratorBasis basis;
  basis.m = m;
  const int n = m + 1;
  auto mat = [n]() { return MatrixXc::Zero(n, n).eval(); };

  if (m == 1) {
    // Compact: i sigma_3.  Noncompact: sigma_1, sigma_2.
    auto x1 = mat();
    x1(0, 0) = kI;
    x1(1, 1) = -kI;
    auto x2 = mat();
    x2(0, 1) = 1.0;
    x2(1, 0) = 1.0;
    auto x3 = mat();
    x3(0, 1) = -kI;
    x3(1, 0) = kI;
    basis.generators = {x1, x2, x3};
    basis.compact = {true, false, false};
  } else {
    // Compact: i lambda_1, i lambda_2, i lambda_3, i lambda_8.
    auto x1 = mat();
    x1(0, 1) = kI;
    x1(1, 0) = kI;
    auto x2 = mat();
    x2(0, 1) = 1.0;
    x2(1, 0) = -1.0;
    auto x3 = mat();
    x3(0, 0) = kI;
    x3(1, 1) = -kI;
    auto x4 = mat();
    const double s3 = 1.0 / std::sqrt(3.0);
    x4(0, 0) = kI * s3;
    x4(1, 1) = kI * s3;
    x4(2, 2) = -2.0 * kI * s3;
    // Noncompact: lambda_4, lambda_5, lambda_6, lambda_7 (already satisfy
    // the su(2,1) condition without the factor of i).
    auto x5 = mat();
    x5(0, 2) = 1.0;
    x5(2, 0) = 1.0;
    auto x6 = mat();
    x6(0, 2) = -kI;
    x6(2, 0) = kI;
    auto x7 = mat();
    x7(1, 2) = 1.0;
    x7(2, 1) = 1.0;
    auto x8 = mat();
    x8(1, 2) = -kI;
    x8(2, 1) = kI;
    basis.generators = {x1, x2, x3, x4, x5, x6, x7, x8};
    basis.compact = {true, true, true, true, false, false, false, false};
  }
  basis.structure = structure_constants(basis.generators);
  return basis;
}

std::vector<MatrixXr> structure_constants(
    const std::vector<MatrixXc>& generators) {
  const int dim = static_cast<int>(generators.size());
  // Gram matrix of the trace form; real on su(m,1).
  MatrixXr gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      gram(a, b) = (generators[a] * generators[b]).trace().real();
  Eigen::FullPivLU<MatrixXr> lu(gram);
  lu.setThreshold(1e-10);
  if (lu.rank() < dim)
    throw InternalError(
        "structure_constants: Gram matrix of the basis is rank-deficient");

  std::vector<MatrixXr> f(dim, MatrixXr::Zero(dim, dim));
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < a; ++b) {
      const MatrixXc br =
          generators[a] * generators[b] - generators[b] * generators[a];
      VectorXr rhs(dim);
      for (int c = 0; c < dim; ++c)
        rhs(c) = (br * generators[c]).trace().real();
      const VectorXr coef = lu.solve(rhs);
      for (int c = 0; c < dim; ++c) {
        f[c](a, b) = coef(c);
        f[c](b, a) = -coef(c);
      }
    }
  }
  return f;
}

std::vector<double> restricted_root_spectrum(const GeneratorBasis& basis) {
  const int dim = basis.dim();
  const MatrixXc& h1 = basis.generators[basis.cartan_index()];
  // ad(H_1) as a real dim x dim matrix in the generator basis, columns
  // expanded through the trace-form Gram solve.
  MatrixXr gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      gram(a, b) = (basis.generators[a] * basis.generators[b]).trace().real();
  Eigen::PartialPivLU<MatrixXr> lu(gram);
  MatrixXr ad(dim, dim);
  for (int b = 0; b < dim; ++b) {
    const MatrixXc br = h1 * basis.generators[b] - basis.generators[b] * h1;
    VectorXr rhs(dim);
    for (int c = 0; c < dim; ++c)
      rhs(c) = (br * basis.generators[c]).trace().real();
    ad.col(b) = lu.solve(rhs);
  }
  Eigen::EigenSolver<MatrixXr> es(ad);
  if (es.info() != Eigen::Success)
    throw InternalError("restricted_root_spectrum: eigensolver failed");
  std::vector<double> roots(dim);
  for (int i = 0; i < dim; ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-8)
      throw InternalError("restricted_root_spectrum: nonreal eigenvalue");
    roots[i] = es.eigenvalues()(i).real();
  }
  std::sort(roots.begin(), roots.end());
  // Cluster within 1e-8 so reported multiplicities are exact.
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i] - roots[i - 1]) < 1e-8) roots[i] = roots[i - 1];
  return roots;
}

AlgebraElement CartanData::H(double t) const {
  MatrixXc h = MatrixXc::Zero(m + 1, m + 1);
  h(m - 1, m) = t;
  h(m, m - 1) = t;
  return {h};
}

GroupElement CartanData::a(double t) const {
  MatrixXc g = MatrixXc::Identity(m + 1, m + 1);
  g(m - 1, m - 1) = std::cosh(t);
  g(m, m) = std::cosh(t);
  g(m - 1, m) = std::sinh(t);
  g(m, m - 1) = std::sinh(t);
  return {g};
}

CartanData cartan_data(int m) {
  if (m != 1 && m != 2)
    throw ConfigError("cartan_data: m must be 1 or 2");
  return CartanData{m};
}

namespace {

// g^{-1} = Γ g^† Γ for Γ-unitary g.
MatrixXc gamma_inverse(const MatrixXc& g, int m) {
  const MatrixXc gam = gamma_metric(m);
  return gam * g.adjoint() * gam;
}

// Unitary V with V u = e_m for a unit vector u.
MatrixXc rotate_to_last(const VectorXc& u) {
  const int m = static_cast<int>(u.size());
  MatrixXc v(m, m);
  if (m == 1) {
    v(0, 0) = std::conj(u(0));
  } else {
    v(0, 0) = -u(1);
    v(0, 1) = u(0);
    v(1, 0) = std::conj(u(0));
    v(1, 1) = std::conj(u(1));
  }
  return v;
}

}  // namespace

KakFactors kak_decompose(const GroupElement& g) {
  const int m = g.m();
  const int n = m + 1;
  const Complex d = g.entries(m, m);
  const VectorXc b = g.entries.topRightCorner(m, 1);
  const double znorm = b.norm() / std::abs(d);

  KakFactors out;
  if (znorm < 1e-13) {
    // g stabilizes the origin, so g is already in K.
    out.k = GroupElement{g.entries.adjoint()};
    out.t = 0.0;
    out.q = GroupElement{MatrixXc::Identity(n, n)};
    return out;
  }

  const VectorXc z = b / d;
  const VectorXc u = z / z.norm();
  const double t = std::atanh(znorm);

  // k_R = diag(e^{i beta} V, e^{i beta}) in K conjugates the geodesic
  // representative g_z to a_t:  k_R g_z k_R^† = a_t.
  const MatrixXc v = rotate_to_last(u);
  const double beta = -std::arg(v.determinant()) / n;
  const Complex phase(std::cos(beta), std::sin(beta));
  MatrixXc kr = MatrixXc::Zero(n, n);
  kr.topLeftCorner(m, m) = phase * v;
  kr(m, m) = phase;

  // Geodesic representative of z in closed form:
  //   g_z = [[I + z z^† / (c(1+c)), z / c], [z^† / c, 1 / c]],  c = sqrt(1-|z|^2).
  const double c = std::sqrt(1.0 - z.squaredNorm());
  MatrixXc gz = MatrixXc::Zero(n, n);
  gz.topLeftCorner(m, m) =
      MatrixXc::Identity(m, m) + z * z.adjoint() / (c * (1.0 + c));
  gz.topRightCorner(m, 1) = z / c;
  gz.bottomLeftCorner(1, m) = z.adjoint() / c;
  gz(m, m) = 1.0 / c;

  // h = g_z^{-1} g stabilizes the origin, i.e. lies in K.
  const MatrixXc h = gamma_inverse(gz, m) * g.entries;

  MatrixXc k = kr;
  MatrixXc q = kr * h;

  // Spend the centralizer gauge on q_{m+1,m+1}: for m=2 a U(1) phase makes
  // it real positive; for m=1 the centralizer is only {+-I}, which fixes
  // the sign of its real part (imaginary part as tie-break).
  const Complex qc = q(m, m);
  MatrixXc cgauge = MatrixXc::Identity(n, n);
  if (m == 1) {
    if (qc.real() < 0.0 || (qc.real() == 0.0 && qc.imag() < 0.0))
      cgauge = -cgauge;
  } else {
    const Complex w = std::conj(qc) / std::abs(qc);
    cgauge(0, 0) = 1.0 / (w * w);
    cgauge(1, 1) = w;
    cgauge(2, 2) = w;
  }
  k = cgauge * k;
  q = cgauge * q;

  out.k = GroupElement{k};
  out.t = t;
  out.q = GroupElement{q};
  return out;
}

GroupElement exp_algebra(const AlgebraElement& x) {
  return GroupElement{expm(x.entries)};
}

AlgebraElement combine(const GeneratorBasis& basis, const VectorXr& xi) {
  if (xi.size() != basis.dim())
    throw InternalError("combine: parameter vector size mismatch");
  MatrixXc x = MatrixXc::Zero(basis.m + 1, basis.m + 1);
  for (int a = 0; a < basis.dim(); ++a) x += xi(a) * basis.generators[a];
  return {x};
}

nlohmann::json basis_to_json(const GeneratorBasis& basis) {
  nlohmann::json j;
  j["m"] = basis.m;
  j["dim"] = basis.dim();
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& x : basis.generators) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < x.cols(); ++c)
        row.push_back({x(r, c).real(), x(r, c).imag()});
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  j["generators"] = gens;
  j["compact"] = basis.compact;
  return j;
}

}  // namespace bergman
