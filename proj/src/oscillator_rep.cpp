#include "bergman/oscillator_rep.hpp"

#include <cmath>

#include "bergman/matrix_exp.hpp"

namespace bergman {

SectorOperator realize(const AlgebraElement& x, const FockSector& sector) {
  const int m = sector.m;
  if (x.m() != m)
    throw InternalError("realize: algebra element size does not match sector");
  const MatrixXc& xm = x.entries;
  const int dim = sector.dim();
  MatrixXc acc = MatrixXc::Zero(dim, dim);

  // X^ = a^† A a + Σ_α B_α a^†_α b^† - Σ_α conj(B_α) b a_α - D b b^†.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const Complex c = xm(a, b);
      if (c != 0.0)
        acc += c * bilinear_matrix(sector, Bilinear::ADagA, a, b).entries;
    }
  for (int a = 0; a < m; ++a) {
    const Complex c = xm(a, m);
    if (c != 0.0)
      acc += c * bilinear_matrix(sector, Bilinear::ADagBDag, a).entries;
  }
  for (int a = 0; a < m; ++a) {
    const Complex c = -std::conj(xm(a, m));
    if (c != 0.0)
      acc += c * bilinear_matrix(sector, Bilinear::BA, a).entries;
  }
  if (xm(m, m) != 0.0)
    acc += -xm(m, m) * bilinear_matrix(sector, Bilinear::BBDag).entries;

  return SectorOperator{sector, std::move(acc)};
}

RealizedGenerators realize_basis(const GeneratorBasis& basis,
                                 const FockSector& sector) {
  RealizedGenerators rg;
  rg.sector = sector;
  rg.hats.reserve(basis.dim());
  for (const auto& x : basis.generators)
    rg.hats.push_back(realize(AlgebraElement{x}, sector));
  return rg;
}

VectorXc apply_realized(const AlgebraElement& x, const FockSector& sector,
                        const VectorXc& v) {
  const int m = sector.m;
  const int dim = sector.dim();
  if (v.size() != dim)
    throw InternalError("apply_realized: vector size mismatch");
  const MatrixXc& xm = x.entries;
  VectorXc out = VectorXc::Zero(dim);

  for (int j = 0; j < dim; ++j) {
    const Complex vj = v(j);
    if (vj == 0.0) continue;
    const auto occ = sector.states[j];
    const int n = sector.b_quanta(j);

    // Diagonal: Σ A_aa m_a - D (n+1).
    Complex diag = -xm(m, m) * static_cast<double>(n + 1);
    for (int a = 0; a < m; ++a)
      diag += xm(a, a) * static_cast<double>(occ[a]);
    out(j) += diag * vj;

    // A_ab a^†_a a_b (a != b).
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (a == b || occ[b] == 0 || xm(a, b) == 0.0) continue;
        auto to = occ;
        --to[b];
        ++to[a];
        const int i = sector.index_of(to[0], to[1]);
        out(i) += xm(a, b) * std::sqrt(static_cast<double>(occ[b])) *
                  std::sqrt(static_cast<double>(occ[a] + 1)) * vj;
      }
    // B_a a^†_a b^† (dropped beyond the truncation).
    for (int a = 0; a < m; ++a) {
      if (xm(a, m) == 0.0) continue;
      auto to = occ;
      ++to[a];
      const int i = sector.index_of(to[0], to[1]);
      if (i >= 0)
        out(i) += xm(a, m) * std::sqrt(static_cast<double>(occ[a] + 1)) *
                  std::sqrt(static_cast<double>(n + 1)) * vj;
    }
    // -conj(B_a) b a_a.
    for (int a = 0; a < m; ++a) {
      if (occ[a] == 0 || xm(a, m) == 0.0) continue;
      auto to = occ;
      --to[a];
      const int i = sector.index_of(to[0], to[1]);
      out(i) += -std::conj(xm(a, m)) * std::sqrt(static_cast<double>(occ[a])) *
                std::sqrt(static_cast<double>(n)) * vj;
    }
  }
  return out;
}

double antihermiticity_residual(const SectorOperator& op) {
  return (op.entries + op.entries.adjoint()).cwiseAbs().maxCoeff();
}

double commutator_check(const RealizedGenerators& rg,
                        const GeneratorBasis& basis) {
  if (rg.sector.M < 2)
    throw ConfigError("commutator_check: M >= 2 required for a nonempty "
                      "interior test set");
  const int dim = basis.dim();
  const MatrixXc p = interior_projector(rg.sector);
  double worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < a; ++b) {
      MatrixXc r = rg.hats[a].entries * rg.hats[b].entries -
                   rg.hats[b].entries * rg.hats[a].entries;
      for (int c = 0; c < dim; ++c) {
        const double f = basis.structure[c](a, b);
        if (f != 0.0) r -= f * rg.hats[c].entries;
      }
      worst = std::max(worst, (p * r * p).norm());
    }
  return worst;
}

SectorOperator represent(const VectorXr& xi, const RealizedGenerators& rg,
                         const GeneratorBasis& basis) {
  if (xi.size() != basis.dim())
    throw InternalError("represent: parameter vector size mismatch");
  const int dim = rg.sector.dim();
  MatrixXc gen = MatrixXc::Zero(dim, dim);
  for (int a = 0; a < basis.dim(); ++a)
    if (xi(a) != 0.0) gen += xi(a) * rg.hats[a].entries;
  return SectorOperator{rg.sector, expm_skew(gen)};
}

}  // namespace bergman
