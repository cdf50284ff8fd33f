#include "bergman/commands.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "bergman/coherent_states.hpp"
#include "bergman/fock_space.hpp"
#include "bergman/geometry.hpp"
#include "bergman/lie_algebra.hpp"
#include "bergman/oscillator_rep.hpp"
#include "bergman/report.hpp"
#include "bergman/rng.hpp"
#include "bergman/star_product.hpp"

namespace bergman {

namespace {

ReportRow residual_row(std::string name, double value, double reference,
                       double tolerance, std::string note = "") {
  ReportRow row;
  row.name = std::move(name);
  row.value = value;
  row.reference = reference;
  row.residual = std::abs(value - reference);
  row.tolerance = tolerance;
  row.pass = row.residual <= tolerance;
  row.note = std::move(note);
  return row;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string point_string(const VectorXc& z) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z(i).real(), z(i).imag());
    s += buf;
    if (i + 1 < z.size()) s += " ";
  }
  return s + ")";
}

VectorXr seeded_params(Rng& rng, int dim, double scale) {
  VectorXr xi(dim);
  for (int i = 0; i < dim; ++i) xi(i) = rng.uniform(-scale, scale);
  return xi;
}

}  // namespace

CommandOutput cmd_verify_algebra(const RunConfig& config) {
  validate_config(config);
  CommandOutput out;
  Report& rep = out.report;
  rep.config = config;
  Rng rng(config.seed);

  const GeneratorBasis basis = build_basis(config.m);
  const int dim = basis.dim();

  rep.add(residual_row("algebra.010_basis_dim", dim,
                       (config.m + 1) * (config.m + 1) - 1, 0.0));

  double worst = 0.0;
  for (const auto& x : basis.generators)
    worst = std::max(worst,
                     algebra_condition_residual(AlgebraElement{x}));
  rep.add(residual_row("algebra.020_defining_condition", worst, 0.0,
                       config.tol("algebra_condition")));

  worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const Complex t = (basis.generators[a] * basis.generators[b]).trace();
      const double expect =
          a == b ? (basis.compact[a] ? -2.0 : 2.0) : 0.0;
      worst = std::max(worst, std::abs(t - expect));
    }
  rep.add(residual_row("algebra.030_trace_form", worst, 0.0,
                       config.tol("trace_form")));

  worst = 0.0;
  for (int c = 0; c < dim; ++c)
    worst = std::max(worst, (basis.structure[c] +
                             basis.structure[c].transpose()).cwiseAbs().maxCoeff());
  rep.add(residual_row("algebra.040_structure_antisymmetry", worst, 0.0, 0.0));

  worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      MatrixXc r = basis.generators[a] * basis.generators[b] -
                   basis.generators[b] * basis.generators[a];
      for (int c = 0; c < dim; ++c)
        r -= basis.structure[c](a, b) * basis.generators[c];
      worst = std::max(worst, r.norm());
    }
  rep.add(residual_row("algebra.050_structure_closure", worst, 0.0,
                       config.tol("structure")));

  worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int e = 0; e < dim; ++e) {
          double s = 0.0;
          for (int d = 0; d < dim; ++d)
            s += basis.structure[d](a, b) * basis.structure[e](d, c) +
                 basis.structure[d](b, c) * basis.structure[e](d, a) +
                 basis.structure[d](c, a) * basis.structure[e](d, b);
          worst = std::max(worst, std::abs(s));
        }
  rep.add(residual_row("algebra.060_jacobi", worst, 0.0, config.tol("jacobi")));

  {
    const std::vector<double> roots = restricted_root_spectrum(basis);
    const std::vector<double> expect =
        config.m == 2 ? std::vector<double>{-2, -1, -1, 0, 0, 1, 1, 2}
                      : std::vector<double>{-2, 0, 2};
    worst = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i)
      worst = std::max(worst, std::abs(roots[i] - expect[i]));
    rep.add(residual_row("algebra.070_restricted_roots", worst, 0.0,
                         config.tol("roots")));
  }

  {
    const CartanData cd = cartan_data(config.m);
    const double r1 =
        (exp_algebra(cd.H(0.7)).entries - cd.a(0.7).entries).norm();
    const double r2 =
        (cd.a(0.4).entries * cd.a(0.7).entries - cd.a(1.1).entries).norm();
    rep.add(residual_row("algebra.080_cartan_exponential", std::max(r1, r2),
                         0.0, config.tol("cartan_exp")));
  }

  worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int a = static_cast<int>(rng.next() % dim);
    const double s = rng.uniform(-2.0, 2.0);
    const GroupElement g =
        exp_algebra(AlgebraElement{s * basis.generators[a]});
    worst = std::max(worst, gamma_unitarity_residual(g) + special_residual(g));
  }
  rep.add(residual_row("algebra.090_exp_gamma_unitarity", worst, 0.0,
                       config.tol("exp_unitarity")));

  {
    double recompose = 0.0, tround = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
      const GroupElement g =
          exp_algebra(combine(basis, seeded_params(rng, dim, 0.5)));
      const KakFactors kak = kak_decompose(g);
      const MatrixXc re = kak.k.entries.adjoint() *
                          cartan_data(config.m).a(kak.t).entries *
                          kak.q.entries;
      recompose = std::max(recompose, (re - g.entries).norm());
      const KakFactors again = kak_decompose(GroupElement{re});
      tround = std::max(tround, std::abs(again.t - kak.t));
    }
    rep.add(residual_row("algebra.100_kak_recompose", recompose, 0.0,
                         config.tol("kak_recompose")));
    rep.add(residual_row("algebra.110_kak_t_roundtrip", tround, 0.0,
                         config.tol("kak_t")));
  }

  // Fock layer.
  const FockSector sector = build_sector(config.m, config.N, config.M);

  worst = 0.0;
  for (int mm = 0; mm <= 50; ++mm) {
    const FockSector s = build_sector(config.m, config.N, mm);
    const double expect =
        config.m == 1 ? mm + 1.0 : (mm + 1.0) * (mm + 2.0) / 2.0;
    worst = std::max(worst, std::abs(s.dim() - expect));
  }
  rep.add(residual_row("fock.120_dim_formula", worst, 0.0, 0.0));

  worst = 0.0;
  for (int a = 0; a < config.m; ++a) {
    const MatrixXc raise =
        bilinear_matrix(sector, Bilinear::ADagBDag, a).entries;
    const MatrixXc lower = bilinear_matrix(sector, Bilinear::BA, a).entries;
    worst = std::max(worst,
                     (raise.adjoint() - lower).cwiseAbs().maxCoeff());
    for (int b = 0; b < config.m; ++b) {
      const MatrixXc ab =
          bilinear_matrix(sector, Bilinear::ADagA, a, b).entries;
      const MatrixXc ba =
          bilinear_matrix(sector, Bilinear::ADagA, b, a).entries;
      worst = std::max(worst, (ab.adjoint() - ba).cwiseAbs().maxCoeff());
    }
  }
  rep.add(residual_row("fock.130_adjoint_pairs", worst, 0.0, 0.0));

  {
    const MatrixXc nop = number_operator(sector).entries;
    const double r =
        (nop - static_cast<double>(config.N) *
                   MatrixXc::Identity(sector.dim(), sector.dim()))
            .cwiseAbs()
            .maxCoeff();
    rep.add(residual_row("fock.140_number_operator", r, 0.0, 0.0));
  }

  const RealizedGenerators rg = realize_basis(basis, sector);

  {
    const MatrixXc nop = number_operator(sector).entries;
    worst = 0.0;
    for (const auto& hat : rg.hats)
      worst = std::max(worst, (hat.entries * nop - nop * hat.entries)
                                  .cwiseAbs()
                                  .maxCoeff());
    rep.add(residual_row("fock.150_charge_invariance", worst, 0.0, 0.0));
  }

  worst = 0.0;
  for (const auto& hat : rg.hats)
    worst = std::max(worst, antihermiticity_residual(hat));
  rep.add(residual_row("oscrep.160_antihermitian", worst, 0.0, 0.0));

  rep.add(residual_row("oscrep.170_commutator_interior",
                       commutator_check(rg, basis), 0.0,
                       config.tol("commutator")));

  worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    VectorXr xi = seeded_params(rng, dim, 1.0);
    if (xi.norm() > 2.0) xi *= 2.0 / xi.norm();
    const MatrixXc t = represent(xi, rg, basis).entries;
    worst = std::max(
        worst, (t.adjoint() * t -
                MatrixXc::Identity(sector.dim(), sector.dim())).norm());
  }
  rep.add(residual_row("oscrep.180_represent_unitary", worst, 0.0,
                       config.tol("represent_unitarity")));

  {
    const VectorXr xi = seeded_params(rng, dim, 0.4);
    const MatrixXc t1 = represent(0.3 * xi, rg, basis).entries;
    const MatrixXc t2 = represent(0.5 * xi, rg, basis).entries;
    const MatrixXc t3 = represent(0.8 * xi, rg, basis).entries;
    rep.add(residual_row("oscrep.190_one_parameter_homomorphism",
                         (t1 * t2 - t3).norm(), 0.0, config.tol("one_param")));
  }

  rep.finalize();
  out.table_csv = report_to_csv(rep);
  return out;
}

CommandOutput cmd_verify_geometry(const RunConfig& config) {
  validate_config(config);
  CommandOutput out;
  Report& rep = out.report;
  rep.config = config;
  Rng rng(config.seed);
  const int m = config.m;
  const int n_rep = config.N;

  {
    const MetricAtPoint mp = metric(VectorXc::Zero(m));
    ReportRow row = residual_row(
        "geometry.010_metric_at_origin",
        (mp.g - MatrixXc::Identity(m, m)).norm(), 0.0,
        config.tol("metric_origin"));
    row.point = point_string(VectorXc::Zero(m));
    rep.add(row);
  }

  std::vector<VectorXc> points;
  for (int i = 0; i < 50; ++i) points.push_back(0.9 * rng.ball_point(m));

  double worst_fd = 0.0, worst_inv = 0.0, worst_ricci = 0.0,
         worst_einstein = 0.0;
  VectorXc at_fd = points[0], at_ricci = points[0];
  for (const auto& z : points) {
    const MetricAtPoint mp = metric(z);
    const double dfd =
        (metric_fd(z, n_rep) - mp.g).cwiseAbs().maxCoeff();
    if (dfd > worst_fd) {
      worst_fd = dfd;
      at_fd = z;
    }
    worst_inv = std::max(
        worst_inv, (mp.g * mp.ginv - MatrixXc::Identity(m, m)).norm());
    const RicciResult rc = ricci(z);
    const double dr = (rc.ricci + (m + 1.0) * mp.g).norm();
    if (dr > worst_ricci) {
      worst_ricci = dr;
      at_ricci = z;
    }
    worst_einstein = std::max(worst_einstein, einstein_residual(z));
  }
  {
    ReportRow row = residual_row("geometry.020_metric_vs_fd", worst_fd, 0.0,
                                 config.tol("metric_fd"));
    row.point = point_string(at_fd);
    rep.add(row);
  }
  rep.add(residual_row("geometry.030_metric_inverse", worst_inv, 0.0,
                       config.tol("metric_inverse")));
  {
    ReportRow row = residual_row("geometry.040_ricci_tensor", worst_ricci,
                                 0.0, config.tol("ricci"),
                                 "R_ij vs -(m+1) g_ij");
    row.point = point_string(at_ricci);
    rep.add(row);
  }
  rep.add(residual_row(
      "geometry.050_einstein_residual", worst_einstein, 0.0,
      config.tol("einstein"),
      "scalar convention: R = -(m+1) (Einstein constant); the contraction g^ij R_ij = -m(m+1)"));

  if (m == 2) {
    // Wrong cosmological constant must not balance the equation.
    const VectorXc z = points[0];
    const MetricAtPoint mp = metric(z);
    const RicciResult rc = ricci(z);
    const double bad =
        (rc.ricci - 0.5 * (-(m + 1.0)) * mp.g + 1.0 * mp.g).norm();
    ReportRow row;
    row.name = "geometry.055_einstein_wrong_lambda";
    row.value = bad;
    row.reference = 0.4;
    row.residual = bad;
    row.tolerance = 0.4;
    row.pass = bad >= 0.4;
    row.note = "anti-test: residual with lambda=1 must stay away from zero";
    rep.add(row);
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const VectorXc w = 0.8 * rng.ball_point(m);
      const VectorXc z = 0.8 * rng.ball_point(m);
      worst = std::max(worst,
                       std::abs(bergman_kernel(w, z, n_rep) -
                                std::conj(bergman_kernel(z, w, n_rep))));
    }
    rep.add(residual_row("geometry.060_kernel_hermitian", worst, 0.0,
                         config.tol("kernel_hermitian")));
  }

  {
    const GeneratorBasis basis = build_basis(m);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const GroupElement g =
          exp_algebra(combine(basis, seeded_params(rng, basis.dim(), 0.4)));
      for (int i = 0; i < 5; ++i) {
        const VectorXc w = 0.6 * rng.ball_point(m);
        const VectorXc z = 0.6 * rng.ball_point(m);
        const MoebiusImage iw = moebius(g, w);
        const MoebiusImage iz = moebius(g, z);
        const Complex lhs = bergman_kernel(iw.zprime, iz.zprime, n_rep);
        const Complex rhs = bergman_kernel(w, z, n_rep) *
                            ipow(std::conj(iw.jfactor), n_rep) *
                            ipow(iz.jfactor, n_rep);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      }
    }
    rep.add(residual_row("geometry.070_kernel_covariance", worst, 0.0,
                         config.tol("kernel_covariance")));
  }

  {
    const MeasureSpec spec = measure_spec(n_rep, m);
    const double ball = m == 1 ? M_PI : M_PI * M_PI / 2.0;
    // Analytic Beta integral of the weight; c_N must normalize it exactly.
    const double beta =
        m == 1 ? 1.0 / (spec.exponent + 1.0)
               : 1.0 / ((spec.exponent + 1.0) * (spec.exponent + 2.0));
    const double exact = spec.c_n * ball * beta * (m == 1 ? 1.0 : 2.0);
    rep.add(residual_row("geometry.080_measure_exact", exact, 1.0,
                         config.tol("measure_exact")));

    const McEstimate est =
        measure_normalization(n_rep, m, config.samples, rng.next());
    ReportRow row;
    row.name = "geometry.085_measure_normalization_mc";
    row.value = est.value;
    row.reference = 1.0;
    row.residual = std::abs(est.value - 1.0);
    row.tolerance = config.tol("mc_sigmas") * std::max(est.stderror, 1e-15);
    row.pass = row.residual <= row.tolerance;
    row.note = "stderr " + fmt(est.stderror);
    rep.add(row);
  }

  {
    const HoloPolynomial z1 = HoloPolynomial::monomial(m, 1, 0);
    const HoloPolynomial other =
        m == 2 ? HoloPolynomial::monomial(m, 0, 1)
               : HoloPolynomial::monomial(m, 0, 0);
    const McComplexEstimate orth =
        inner_product(z1, other, n_rep, config.samples, rng.next());
    ReportRow row;
    row.name = "geometry.090_inner_orthogonality";
    row.value = std::abs(orth.value);
    row.reference = 0.0;
    row.residual = row.value;
    row.tolerance = config.tol("mc_sigmas") * std::max(orth.stderror, 1e-15);
    row.pass = row.residual <= row.tolerance;
    rep.add(row);

    const McComplexEstimate norm =
        inner_product(z1, z1, n_rep, config.samples, rng.next());
    ReportRow row2;
    row2.name = "geometry.095_inner_monomial";
    row2.value = norm.value.real();
    row2.reference = 1.0 / n_rep;  // closed-form Beta integral
    row2.residual = std::abs(norm.value - Complex(1.0 / n_rep));
    row2.tolerance = config.tol("mc_sigmas") * std::max(norm.stderror, 1e-15);
    row2.pass = row2.residual <= row2.tolerance;
    rep.add(row2);
  }

  {
    VectorXc w = VectorXc::Zero(m);
    w(0) = 0.3;
    const HoloPolynomial one = HoloPolynomial::monomial(m, 0, 0);
    const HoloPolynomial z1 = HoloPolynomial::monomial(m, 1, 0);
    const McComplexEstimate rc =
        reproducing_check(one, w, n_rep, config.samples, rng.next());
    ReportRow row;
    row.name = "geometry.100_reproducing_constant";
    row.point = point_string(w);
    row.value = rc.value.real();
    row.reference = 1.0;
    row.residual = std::abs(rc.value - Complex(1.0));
    row.tolerance = config.tol("mc_sigmas") * std::max(rc.stderror, 1e-15);
    row.pass = row.residual <= row.tolerance;
    rep.add(row);

    const McComplexEstimate rl =
        reproducing_check(z1, w, n_rep, config.samples, rng.next());
    ReportRow row2;
    row2.name = "geometry.105_reproducing_monomial";
    row2.point = point_string(w);
    row2.value = rl.value.real();
    row2.reference = 0.3;
    row2.residual = std::abs(rl.value - Complex(0.3));
    row2.tolerance = config.tol("mc_sigmas") * std::max(rl.stderror, 1e-15);
    row2.pass = row2.residual <= row2.tolerance;
    rep.add(row2);
  }

  {
    const GeneratorBasis basis = build_basis(m);
    HoloPolynomial f = HoloPolynomial::monomial(m, 0, 0);
    f.coeffs[{1, 0}] = 2.0;
    if (m == 2) f.coeffs[{0, 1}] = Complex(0.0, 1.0);
    double worst = 0.0;
    for (int pair = 0; pair < 10; ++pair) {
      const GroupElement g1 =
          exp_algebra(combine(basis, seeded_params(rng, basis.dim(), 0.35)));
      const GroupElement g2 =
          exp_algebra(combine(basis, seeded_params(rng, basis.dim(), 0.35)));
      const GroupElement g21{g2.entries * g1.entries};
      for (int i = 0; i < 20; ++i) {
        const VectorXc z = 0.6 * rng.ball_point(m);
        // T(g) as displayed composes contravariantly: T(g1)T(g2) = T(g2 g1).
        const MoebiusImage img = moebius(g1, z);
        const Complex lhs = ipow(img.jfactor, -n_rep) *
                            discrete_series_eval(g2, f, n_rep, img.zprime);
        const Complex rhs = discrete_series_eval(g21, f, n_rep, z);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    rep.add(residual_row("geometry.110_cocycle", worst, 0.0,
                         config.tol("cocycle"),
                         "T(g1)(T(g2)f) = T(g2 g1)f (right action)"));

    // Unitarity of T_N: paired estimator of (Tf, Tg) - (f, g).
    const GroupElement g =
        exp_algebra(combine(basis, seeded_params(rng, basis.dim(), 0.3)));
    const HoloPolynomial fa = HoloPolynomial::monomial(m, 1, 0);
    HoloPolynomial fb = HoloPolynomial::monomial(m, 0, 0);
    fb.coeffs[{1, 0}] = Complex(0.5, 0.25);
    const MeasureSpec spec = measure_spec(n_rep, m);
    Rng mc(rng.next());
    const double ball = m == 1 ? M_PI : M_PI * M_PI / 2.0;
    Complex sum = 0.0;
    double sum2 = 0.0;
    for (std::uint64_t i = 0; i < config.samples; ++i) {
      const VectorXc z = mc.ball_point(m);
      const double wgt =
          spec.c_n * std::pow(1.0 - z.squaredNorm(), spec.exponent);
      const Complex ta = discrete_series_eval(g, fa, n_rep, z);
      const Complex tb = discrete_series_eval(g, fb, n_rep, z);
      const Complex h =
          wgt * (std::conj(ta) * tb - std::conj(fa(z)) * fb(z));
      sum += h;
      sum2 += std::norm(h);
    }
    const double nn = static_cast<double>(config.samples);
    const Complex mean = ball * sum / nn;
    const double var = std::max(0.0, sum2 / nn - std::norm(sum / nn));
    const double se = ball * std::sqrt(var / nn);
    ReportRow row;
    row.name = "geometry.120_unitarity_mc";
    row.value = std::abs(mean);
    row.reference = 0.0;
    row.residual = row.value;
    row.tolerance = config.tol("mc_sigmas") * std::max(se, 1e-15);
    row.pass = row.residual <= row.tolerance;
    row.note = "(T f, T g) - (f, g), paired estimator";
    rep.add(row);
  }

  rep.finalize();
  out.table_csv = report_to_point_csv(rep);
  return out;
}

namespace {

struct PooledFitResult {
  double a_n = 0.0, b_n = 0.0, residual = 0.0, condition = 0.0;
  bool ok = true;
};

// Least squares of S - P = a_n P + b_n δ over all pair samples of one N.
PooledFitResult pooled_fit(const std::vector<double>& p,
                           const std::vector<double>& y,
                           const std::vector<bool>& diag) {
  const int n = static_cast<int>(p.size());
  MatrixXr design(n, 2);
  VectorXr rhs(n);
  for (int i = 0; i < n; ++i) {
    design(i, 0) = p[i];
    design(i, 1) = diag[i] ? 1.0 : 0.0;
    rhs(i) = y[i];
  }
  Eigen::JacobiSVD<MatrixXr> svd(design,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(1);
  PooledFitResult out;
  out.condition =
      smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  out.ok = smax > 0.0 && smin > 1e-12 * smax;
  const VectorXr beta = svd.solve(rhs);
  out.a_n = beta(0);
  out.b_n = beta(1);
  const double ynorm = rhs.norm();
  out.residual = ynorm > 0.0 ? (design * beta - rhs).norm() / ynorm : 0.0;
  return out;
}

double loglog_slope_vec(const std::vector<int>& ns,
                        const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (std::abs(v[i]) < 1e-300) continue;
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(std::abs(v[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

}  // namespace

CommandOutput cmd_star_table(const RunConfig& config) {
  validate_config(config);
  const std::vector<int> ns = config.n_values();
  if (ns.size() < 4)
    throw ConfigError("star-table: need an N range with at least 4 values");

  const std::vector<DomainPoint> grid = standard_z_grid(config.m, config.seed);
  {
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : grid)
      distinct.insert({p.z(0).real(), p.z(0).imag()});
    if (distinct.size() < 8)
      throw ConfigError("star-table: degenerate z grid");
  }

  const GeneratorBasis basis = build_basis(config.m);
  const int dim = basis.dim();
  const double tail_tol =
      config.adaptive_M ? config.tol("tail") * 1e-2 : config.tol("tail");

  CommandOutput out;
  Report& rep = out.report;
  rep.config = config;

  std::vector<double> a_series, b_series, diff_series, comm_series,
      fit_res_series;
  std::string csv = "N,A_N,B_N,residual,slope\n";
  std::vector<std::string> csv_rows;

  for (int n : ns) {
    const int trunc = suggest_truncation(0.5, n, tail_tol, 60);
    const FockSector sector = build_sector(config.m, n, trunc);
    std::vector<double> pvals, yvals;
    std::vector<bool> diag;
    double max_diff = 0.0, max_comm = 0.0;
    for (const auto& zp : grid) {
      const CoherentState st = coherent_state(zp, sector, tail_tol);
      const CoherentFrame fr = make_frame(basis, st);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b <= a; ++b) {
          const StarCoordinates sc = star_coordinates(basis, a, b, fr);
          const Complex pointwise = sc.xi_a * sc.xi_b;
          max_diff =
              std::max(max_diff, std::abs(sc.star_value - pointwise));
          if (a != b) max_comm = std::max(max_comm, sc.commutator_residual);
          pvals.push_back(pointwise.real());
          yvals.push_back(sc.symmetric_part - pointwise.real());
          diag.push_back(a == b);
        }
    }
    const PooledFitResult fit = pooled_fit(pvals, yvals, diag);
    a_series.push_back(fit.a_n);
    b_series.push_back(fit.b_n);
    diff_series.push_back(max_diff);
    comm_series.push_back(max_comm);
    fit_res_series.push_back(fit.residual);
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,", n, fit.a_n,
                  fit.b_n, fit.residual);
    csv_rows.push_back(buf);
  }

  const double slope = loglog_slope_vec(ns, diff_series);
  for (auto& row : csv_rows) csv += row + fmt(slope) + "\n";
  out.table_csv = csv;

  double max_comm = 0.0, max_fit_res = 0.0;
  for (double v : comm_series) max_comm = std::max(max_comm, v);
  for (double v : fit_res_series) max_fit_res = std::max(max_fit_res, v);

  rep.add(residual_row("star.010_commutator_identity", max_comm, 0.0,
                       config.tol("star_commutator"),
                       "(xi_A * xi_B - xi_B * xi_A) vs (1/N) f^C_AB xi_C"));
  {
    ReportRow row;
    row.name = "star.020_commutative_limit_slope";
    row.value = slope;
    row.reference = -1.0;
    row.residual = std::abs(slope + 1.0);
    row.tolerance = config.tol("slope_window");
    row.pass = row.residual <= row.tolerance;
    row.note = "log-log slope of max_z |xi*xi - xi xi| vs N";
    rep.add(row);
  }
  {
    const double expo_a = -loglog_slope_vec(ns, a_series);
    const double expo_b = -loglog_slope_vec(ns, b_series);
    ReportRow row;
    row.name = "star.030_exponent_A";
    row.value = expo_a;
    row.reference = 1.0;
    row.residual = std::abs(expo_a - 1.0);
    row.tolerance = config.tol("exponent_window");
    row.pass = row.residual <= row.tolerance;
    rep.add(row);
    ReportRow row2 = row;
    row2.name = "star.040_exponent_B";
    row2.value = expo_b;
    row2.residual = std::abs(expo_b - 1.0);
    row2.pass = row2.residual <= row2.tolerance;
    rep.add(row2);
  }
  {
    // Informational: two-parameter model misfit is recorded, not hidden.
    ReportRow row;
    row.name = "star.050_fit_residual";
    row.value = max_fit_res;
    row.reference = 0.0;
    row.residual = max_fit_res;
    row.tolerance = config.tol("fit_residual");
    row.pass = true;
    row.note = max_fit_res <= config.tol("fit_residual")
                   ? "within the two-parameter model"
                   : "model misfit: symmetric part carries z-dependent 1/N "
                     "terms beyond the displayed form";
    rep.add(row);
  }

  rep.finalize();
  return out;
}

CommandOutput cmd_omega_scan(const RunConfig& config) {
  validate_config(config);
  CommandOutput out;
  Report& rep = out.report;
  rep.config = config;
  const CartanData cd = cartan_data(config.m);

  std::vector<double> ts, values;
  for (int i = 0; i < config.t_steps; ++i)
    ts.push_back(config.t_max * i / (config.t_steps - 1));

  const double tail_tol = config.tol("tail");
  std::string csv = "t,omega_re,omega_im,reference,residual\n";

  // Chain truncation large enough for the largest t.
  const double zmax = std::tanh(config.t_max);
  int trunc = std::max(config.M, suggest_truncation(zmax, config.N, tail_tol, 400));
  const FockSector sector = build_sector(config.m, config.N, trunc);

  double max_resid_fit = 0.0, max_resid_naive = 0.0, max_resid_paper = 0.0;
  double tail_worst = 0.0;

  // Which closed-form family matches: fit the exponent p in (cosh t)^-p.
  double psum = 0.0;
  int pcnt = 0;
  std::vector<Complex> omegas;
  for (double t : ts) {
    const OmegaValue om = omega0(cd.a(t), sector, tail_tol);
    omegas.push_back(om.value);
    tail_worst = std::max(tail_worst, om.tail);
    if (t > 0.2) {
      psum += -std::log(std::abs(om.value)) / std::log(std::cosh(t));
      ++pcnt;
    }
  }
  const double p_fit = pcnt > 0 ? psum / pcnt : static_cast<double>(config.N);
  const int p_round = static_cast<int>(std::lround(p_fit));

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    const double ref = std::pow(std::cosh(t), -p_round);
    const double resid = std::abs(omegas[i] - ref);
    max_resid_fit = std::max(max_resid_fit, resid);
    max_resid_naive = std::max(
        max_resid_naive, std::abs(omegas[i] - std::pow(std::cosh(t),
                                                       -config.N)));
    // Printed closed form taken at face value (phases trivial for a_t):
    // (1/cosh t) (1 + log cosh t)^N.
    const double paper =
        std::pow(1.0 + std::log(std::cosh(t)), config.N) / std::cosh(t);
    max_resid_paper = std::max(max_resid_paper, std::abs(omegas[i] - paper));
    csv += fmt(t) + "," + fmt(omegas[i].real()) + "," + fmt(omegas[i].imag()) +
           "," + fmt(ref) + "," + fmt(resid) + "\n";
  }
  out.table_csv = csv;

  {
    ReportRow row;
    row.name = "omega.010_family_match";
    row.value = max_resid_fit;
    row.reference = 0.0;
    row.residual = max_resid_fit;
    row.tolerance = config.tol("omega");
    row.pass = max_resid_fit <= row.tolerance;
    row.note = "matched (cosh t)^-p with p = " + std::to_string(p_round) +
               " (N = " + std::to_string(config.N) + ", exponent fit " +
               fmt(p_fit) + ")";
    rep.add(row);
  }
  {
    ReportRow row;
    row.name = "omega.020_naive_family_gap";
    row.value = max_resid_naive;
    row.residual = max_resid_naive;
    row.pass = true;
    row.note = "informational: distance to (cosh t)^-N";
    rep.add(row);
    ReportRow row2;
    row2.name = "omega.030_printed_form_gap";
    row2.value = max_resid_paper;
    row2.residual = max_resid_paper;
    row2.pass = true;
    row2.note = "informational: distance to the printed closed form "
                "(1/cosh t)(1+log cosh t)^N";
    rep.add(row2);
  }
  {
    ReportRow row;
    row.name = "omega.040_truncation_tail";
    row.value = tail_worst;
    row.reference = 0.0;
    row.residual = tail_worst;
    row.tolerance = tail_tol;
    row.pass = tail_worst <= tail_tol;
    rep.add(row);
  }

  rep.finalize();
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  validate_config(config);
  CommandOutput out;
  Report& rep = out.report;
  rep.config = config;

  const GeneratorBasis basis = build_basis(config.m);
  const std::vector<int> ns = config.n_values();
  const std::pair<int, int> mrange =
      config.M_range ? *config.M_range : std::pair<int, int>{3, 8};

  Rng rng(config.seed);
  VectorXc dir(config.m);
  for (int i = 0; i < config.m; ++i)
    dir(i) = Complex(rng.normal(), rng.normal());
  dir /= dir.norm();
  const DomainPoint zref{0.5 * dir};

  std::string csv = "N,M,dim,commutator_residual,tail\n";
  double worst_comm = 0.0;
  bool tails_monotone = true;
  for (int n : ns) {
    double prev_tail = std::numeric_limits<double>::infinity();
    for (int mm = mrange.first; mm <= mrange.second; ++mm) {
      const FockSector sector = build_sector(config.m, n, mm);
      const RealizedGenerators rg = realize_basis(basis, sector);
      const double comm = commutator_check(rg, basis);
      worst_comm = std::max(worst_comm, comm);
      const CoherentState st = coherent_state(zref, sector, 1.0);
      if (st.tail > prev_tail + 1e-15) tails_monotone = false;
      prev_tail = st.tail;
      csv += std::to_string(n) + "," + std::to_string(mm) + "," +
             std::to_string(sector.dim()) + "," + fmt(comm) + "," +
             fmt(st.tail) + "\n";
    }
  }
  out.table_csv = csv;

  rep.add(residual_row("sweep.010_commutator_max", worst_comm, 0.0,
                       config.tol("commutator")));
  {
    ReportRow row;
    row.name = "sweep.020_tail_monotone";
    row.value = tails_monotone ? 1.0 : 0.0;
    row.reference = 1.0;
    row.residual = tails_monotone ? 0.0 : 1.0;
    row.tolerance = 0.0;
    row.pass = tails_monotone;
    row.note = "coherent tail decreases with M at fixed z";
    rep.add(row);
  }

  rep.finalize();
  return out;
}

}  // namespace bergman
