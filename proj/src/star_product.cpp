#include "bergman/star_product.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "bergman/oscillator_rep.hpp"
#include "bergman/rng.hpp"

namespace bergman {

Complex Symbol::evaluate(const CoherentState& state) const {
  return symbol(op, state);
}

Complex symbol(const SectorOperator& op, const CoherentState& state) {
  if (!op.sector.same_sector(state.sector))
    throw DomainError("symbol: operator and state live on different sectors");
  return state.vector.dot(op.entries * state.vector);
}

Complex star(const SectorOperator& f, const SectorOperator& g,
             const CoherentState& state) {
  if (!f.sector.same_sector(g.sector) ||
      !f.sector.same_sector(state.sector))
    throw DomainError("star: sector mismatch");
  const MatrixXc prod = f.entries * g.entries;
  return state.vector.dot(prod * state.vector);
}

Complex generator_symbol(const GeneratorBasis& basis,
                         std::span<const int> indices,
                         const CoherentState& state) {
  if (indices.empty())
    throw DomainError("generator_symbol: empty index list");
  VectorXc w = state.vector;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    if (*it < 0 || *it >= basis.dim())
      throw DomainError("generator_symbol: generator index out of range");
    w = apply_realized(AlgebraElement{basis.generators[*it]}, state.sector, w);
  }
  const Complex val = state.vector.dot(w);
  return (indices.size() % 2 == 0) ? val : -val;
}

CoherentFrame make_frame(const GeneratorBasis& basis,
                         const CoherentState& state) {
  CoherentFrame fr;
  fr.state = state;
  fr.applied.reserve(basis.dim());
  fr.pairings.reserve(basis.dim());
  const double n = static_cast<double>(state.sector.N);
  for (int a = 0; a < basis.dim(); ++a) {
    fr.applied.push_back(apply_realized(AlgebraElement{basis.generators[a]},
                                        state.sector, state.vector));
    fr.pairings.push_back(state.vector.dot(fr.applied.back()) / n);
  }
  return fr;
}

StarCoordinates star_coordinates(const GeneratorBasis& basis, int a, int b,
                                 const CoherentFrame& frame) {
  const double n = static_cast<double>(frame.state.sector.N);
  // <X^_A X^_B> = (X^_A† v)† (X^_B v) = -(X^_A v)† (X^_B v).
  const Complex star_ab = -frame.applied[a].dot(frame.applied[b]) / (n * n);
  const Complex star_ba = -frame.applied[b].dot(frame.applied[a]) / (n * n);

  Complex f_term = 0.0;
  for (int c = 0; c < basis.dim(); ++c) {
    const double f = basis.structure[c](a, b);
    if (f != 0.0) f_term += f * frame.pairings[c];
  }

  StarCoordinates out;
  out.star_value = star_ab;
  out.commutator_residual = std::abs(star_ab - star_ba - f_term / n);
  out.symmetric_part = 0.5 * (star_ab + star_ba).real();
  out.xi_a = frame.pairings[a];
  out.xi_b = frame.pairings[b];
  return out;
}

std::vector<DomainPoint> standard_z_grid(int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DomainPoint> grid;
  for (const double rho : {0.1, 0.3, 0.5}) {
    for (int j = 0; j < 8; ++j) {
      VectorXc dir(m);
      double norm2 = 0.0;
      for (int i = 0; i < m; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        dir(i) = Complex(re, im);
        norm2 += re * re + im * im;
      }
      dir /= std::sqrt(norm2);
      grid.push_back(DomainPoint{rho * dir});
    }
  }
  return grid;
}

namespace {

// Least squares of y = a_n * p + b_n * [diagonal] over the samples.
void fit_two_parameter(const std::vector<double>& p,
                       const std::vector<double>& y, bool diagonal,
                       StarFit& fit) {
  const int n = static_cast<int>(p.size());
  const int cols = diagonal ? 2 : 1;
  MatrixXr design(n, cols);
  VectorXr rhs(n);
  for (int i = 0; i < n; ++i) {
    design(i, 0) = p[i];
    if (diagonal) design(i, 1) = 1.0;
    rhs(i) = y[i];
  }
  Eigen::JacobiSVD<MatrixXr> svd(design,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  fit.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  fit.ok = smin > 1e-12 * smax && smax > 0.0;
  const VectorXr beta = svd.solve(rhs);
  fit.a_n = beta(0);
  fit.b_n = diagonal ? beta(1) : 0.0;
  const double ynorm = rhs.norm();
  fit.residual = ynorm > 0.0 ? (design * beta - rhs).norm() / ynorm : 0.0;
}

// Slope of log|v| against log N by linear regression.
double loglog_slope(const std::vector<int>& ns, const std::vector<double>& v) {
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

StarExpansion fit_expansion(const GeneratorBasis& basis, int a, int b,
                            std::span<const int> n_values,
                            std::span<const DomainPoint> samples,
                            double tail_tol, int m_max) {
  if (samples.size() < 8)
    throw ConfigError("fit_expansion: need at least 8 sample points");
  if (n_values.size() < 4)
    throw ConfigError("fit_expansion: need at least 4 values of N");

  StarExpansion e;
  e.a = a;
  e.b = b;
  std::vector<int> ns(n_values.begin(), n_values.end());
  std::vector<double> a_series, b_series, diff_series;

  for (std::size_t in = 0; in < ns.size(); ++in) {
    const int n = ns[in];
    double max_rho = 0.0;
    for (const auto& p : samples) max_rho = std::max(max_rho, p.z.norm());
    const int trunc = suggest_truncation(max_rho, n, tail_tol, m_max);
    const FockSector sector = build_sector(basis.m, n, trunc);

    std::vector<double> pvals, yvals;
    StarFit fit;
    fit.N = n;
    std::vector<StarSample> local;
    for (const auto& zp : samples) {
      const CoherentState st = coherent_state(zp, sector, tail_tol);
      const CoherentFrame fr = make_frame(basis, st);
      const StarCoordinates sc = star_coordinates(basis, a, b, fr);
      const Complex pointwise = sc.xi_a * sc.xi_b;
      StarSample smp;
      smp.z = zp.z;
      smp.star_value = sc.star_value;
      smp.pointwise = pointwise;
      smp.commutator_part = 2.0 * Complex(0, 1) * sc.star_value.imag();
      local.push_back(smp);
      fit.max_diff = std::max(fit.max_diff, std::abs(sc.star_value - pointwise));
      fit.max_comm_residual =
          std::max(fit.max_comm_residual, sc.commutator_residual);
      pvals.push_back(pointwise.real());
      yvals.push_back(sc.symmetric_part - pointwise.real());
    }
    fit_two_parameter(pvals, yvals, a == b, fit);
    e.fits.push_back(fit);
    a_series.push_back(fit.a_n);
    b_series.push_back(fit.b_n);
    diff_series.push_back(fit.max_diff);
    if (in + 1 == ns.size()) e.samples = std::move(local);
  }

  e.exponent_a = -loglog_slope(ns, a_series);
  e.exponent_b = (a == b) ? -loglog_slope(ns, b_series) : 0.0;
  e.slope = loglog_slope(ns, diff_series);
  return e;
}

nlohmann::json expansion_to_json(const StarExpansion& e) {
  nlohmann::json j;
  j["pair"] = {e.a, e.b};
  j["exponent_A"] = e.exponent_a;
  j["exponent_B"] = e.exponent_b;
  j["slope"] = e.slope;
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : e.fits) {
    fits.push_back({{"N", f.N},
                    {"A_N", f.a_n},
                    {"B_N", f.b_n},
                    {"residual", f.residual},
                    {"condition", f.condition},
                    {"ok", f.ok},
                    {"max_diff", f.max_diff},
                    {"max_comm_residual", f.max_comm_residual}});
  }
  j["fits"] = fits;
  nlohmann::json smp = nlohmann::json::array();
  for (const auto& s : e.samples) {
    nlohmann::json zj = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.z.size(); ++i)
      zj.push_back({s.z(i).real(), s.z(i).imag()});
    smp.push_back({{"z", zj},
                   {"star", {s.star_value.real(), s.star_value.imag()}},
                   {"pointwise", {s.pointwise.real(), s.pointwise.imag()}},
                   {"commutator",
                    {s.commutator_part.real(), s.commutator_part.imag()}}});
  }
  j["samples"] = smp;
  return j;
}

std::string expansion_to_csv(const StarExpansion& e) {
  std::string out = "N,A_N,B_N,residual,slope\n";
  char buf[160];
  for (const auto& f : e.fits) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", f.N,
                  f.a_n, f.b_n, f.residual, e.slope);
    out += buf;
  }
  return out;
}

}  // namespace bergman
