#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bergman/lie_algebra.hpp"
#include "bergman/matrix_exp.hpp"
#include "bergman/oscillator_rep.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

VectorXc seeded_vector(Rng& rng, int dim) {
  VectorXc v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("realize: zero element, exact anti-hermiticity") {
  for (int m : {1, 2}) {
    const FockSector s = build_sector(m, m + 1, 4);
    const int n = m + 1;
    CHECK(realize(AlgebraElement{MatrixXc::Zero(n, n)}, s)
              .entries.cwiseAbs()
              .maxCoeff() == 0.0);
    const GeneratorBasis basis = build_basis(m);
    for (const auto& x : basis.generators)
      CHECK(antihermiticity_residual(realize(AlgebraElement{x}, s)) == 0.0);
    // arbitrary combinations stay exactly anti-Hermitian at assembly
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      VectorXr xi(basis.dim());
      for (int i = 0; i < basis.dim(); ++i) xi(i) = rng.uniform(-3.0, 3.0);
      CHECK(antihermiticity_residual(realize(combine(basis, xi), s)) == 0.0);
    }
  }
}

TEST_CASE("realize: linearity") {
  const GeneratorBasis basis = build_basis(2);
  const FockSector s = build_sector(2, 3, 4);
  // power-of-two scalars on disjoint generators combine bitwise exactly
  const AlgebraElement x{basis.generators[0]};
  const AlgebraElement y{basis.generators[6]};
  const AlgebraElement combo{2.0 * x.entries - 0.5 * y.entries};
  const MatrixXc lhs = realize(combo, s).entries;
  const MatrixXc rhs =
      2.0 * realize(x, s).entries - 0.5 * realize(y, s).entries;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  // generic scalars to roundoff
  const AlgebraElement combo2{0.37 * x.entries + 1.91 * y.entries};
  const MatrixXc rhs2 =
      0.37 * realize(x, s).entries + 1.91 * realize(y, s).entries;
  CHECK((realize(combo2, s).entries - rhs2).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("matrix-free apply matches the dense realization") {
  Rng rng(11);
  for (int m : {1, 2}) {
    const GeneratorBasis basis = build_basis(m);
    const FockSector s = build_sector(m, m + 2, 5);
    for (int trial = 0; trial < 5; ++trial) {
      VectorXr xi(basis.dim());
      for (int i = 0; i < basis.dim(); ++i) xi(i) = rng.uniform(-1.0, 1.0);
      const AlgebraElement x = combine(basis, xi);
      const VectorXc v = seeded_vector(rng, s.dim());
      const VectorXc direct = apply_realized(x, s, v);
      const VectorXc dense = realize(x, s).entries * v;
      CHECK((direct - dense).norm() < 1e-13 * dense.norm() + 1e-15);
    }
  }
}

TEST_CASE("diagonal u(1) direction acts on the base state by -(D)(N+1)") {
  SUBCASE("m = 2, generator i lambda_8") {
    const int N = 5;
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, N, 3);
    const SectorOperator op = realize(AlgebraElement{basis.generators[3]}, s);
    VectorXc e0 = VectorXc::Zero(s.dim());
    e0(0) = 1.0;
    const Complex expect =
        -Complex(0, -2.0 / std::sqrt(3.0)) * static_cast<double>(N + 1);
    CHECK((op.entries * e0 - expect * e0).norm() < 1e-13);
  }
  SUBCASE("m = 1, generator i sigma_3") {
    const int N = 4;
    const GeneratorBasis basis = build_basis(1);
    const FockSector s = build_sector(1, N, 3);
    const SectorOperator op = realize(AlgebraElement{basis.generators[0]}, s);
    VectorXc e0 = VectorXc::Zero(s.dim());
    e0(0) = 1.0;
    const Complex expect = Complex(0, N + 1.0);  // -D(N+1) with D = -i
    CHECK((op.entries * e0 - expect * e0).norm() < 1e-13);
  }
}

TEST_CASE("charge invariance: realized generators commute with N^") {
  for (int m : {1, 2}) {
    const GeneratorBasis basis = build_basis(m);
    const FockSector s = build_sector(m, m + 1, 4);
    const MatrixXc nop = number_operator(s).entries;
    for (const auto& x : basis.generators) {
      const MatrixXc hat = realize(AlgebraElement{x}, s).entries;
      CHECK((hat * nop - nop * hat).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("interior commutator closure") {
  SUBCASE("m = 2, N = 3, M = 4") {
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, 3, 4);
    CHECK(commutator_check(realize_basis(basis, s), basis) < 1e-12);
  }
  SUBCASE("m = 1, N = 2, M = 4") {
    const GeneratorBasis basis = build_basis(1);
    const FockSector s = build_sector(1, 2, 4);
    CHECK(commutator_check(realize_basis(basis, s), basis) < 1e-12);
  }
  SUBCASE("same generator commutes with itself exactly") {
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, 3, 3);
    const RealizedGenerators rg = realize_basis(basis, s);
    for (const auto& hat : rg.hats) {
      const MatrixXc c = hat.entries * hat.entries - hat.entries * hat.entries;
      CHECK(c.cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("spot grid across N and M") {
    for (int m : {1, 2}) {
      const GeneratorBasis basis = build_basis(m);
      for (int N : {m + 1, m + 4, 12})
        for (int M : {2, 5, 8}) {
          const FockSector s = build_sector(m, N, M);
          CHECK(commutator_check(realize_basis(basis, s), basis) < 1e-12);
        }
    }
  }
  SUBCASE("M below 2 is rejected") {
    const GeneratorBasis basis = build_basis(1);
    const FockSector s = build_sector(1, 2, 1);
    CHECK_THROWS_AS(commutator_check(realize_basis(basis, s), basis),
                    ConfigError);
  }
}

TEST_CASE("represent: unitarity and group laws") {
  const GeneratorBasis basis = build_basis(2);
  const FockSector s = build_sector(2, 3, 5);
  const RealizedGenerators rg = realize_basis(basis, s);
  const int dim = s.dim();
  const MatrixXc eye = MatrixXc::Identity(dim, dim);

  SUBCASE("zero parameters give the identity") {
    CHECK((represent(VectorXr::Zero(8), rg, basis).entries - eye).norm() <
          1e-14);
  }
  SUBCASE("inverse, one-parameter homomorphism, norm preservation") {
    Rng rng(21);
    for (int trial = 0; trial < 8; ++trial) {
      VectorXr xi(8);
      for (int i = 0; i < 8; ++i) xi(i) = rng.uniform(-0.5, 0.5);
      const MatrixXc t = represent(xi, rg, basis).entries;
      const MatrixXc tinv = represent(-xi, rg, basis).entries;
      CHECK((t * tinv - eye).norm() < 1e-11);
      CHECK((t.adjoint() * t - eye).norm() < 1e-11);
      const MatrixXc t1 = represent(0.4 * xi, rg, basis).entries;
      const MatrixXc t2 = represent(0.6 * xi, rg, basis).entries;
      CHECK((t1 * t2 - t).norm() < 1e-10);
      const VectorXc v = seeded_vector(rng, dim);
      CHECK(std::abs((t * v).norm() - v.norm()) < 1e-11 * v.norm());
    }
  }
  SUBCASE("seeded unitarity at the contract scale") {
    Rng rng(22);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      VectorXr xi(8);
      for (int i = 0; i < 8; ++i) xi(i) = rng.uniform(-1.0, 1.0);
      if (xi.norm() > 2.0) xi *= 2.0 / xi.norm();
      const MatrixXc t = represent(xi, rg, basis).entries;
      worst = std::max(worst, (t.adjoint() * t - eye).norm());
    }
    CHECK(worst < 1e-11);
  }
}
