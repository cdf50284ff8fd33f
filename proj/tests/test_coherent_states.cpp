#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bergman/coherent_states.hpp"
#include "bergman/matrix_exp.hpp"
#include "bergman/oscillator_rep.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Closed-form oracle for the truncated coherent state: the disentangled
// two-mode squeeze gives T(g_z)|z0> = (1-|z|^2)^((N+1)/2) exp(z.a^+ b^+)|z0>
// in the untruncated space, i.e. components
//   c(alpha; N+k) = z1^a1 z2^a2 sqrt((N+k)! / (a1! a2! N!)).
// The oracle is truncated at M and renormalized before comparison.
VectorXc closed_form_state(const FockSector& s, const VectorXc& z) {
  VectorXc v = VectorXc::Zero(s.dim());
  for (int j = 0; j < s.dim(); ++j) {
    const auto occ = s.states[j];
    const int k = occ[0] + occ[1];
    double amp = std::sqrt(factorial(s.N + k) /
                           (factorial(occ[0]) * factorial(occ[1]) *
                            factorial(s.N)));
    Complex zpow = ipow(z(0), occ[0]);
    if (s.m == 2) zpow *= ipow(z(1), occ[1]);
    v(j) = amp * zpow;
  }
  v.normalize();
  return v;
}

// The noncompact algebra element whose exponential is the geodesic
// representative of z.
AlgebraElement geodesic_generator(const VectorXc& z) {
  const int m = static_cast<int>(z.size());
  const double r = std::atanh(z.norm());
  const VectorXc zeta = z.norm() > 0 ? VectorXc(r * z / z.norm())
                                     : VectorXc(VectorXc::Zero(m));
  MatrixXc x = MatrixXc::Zero(m + 1, m + 1);
  x.topRightCorner(m, 1) = zeta;
  x.bottomLeftCorner(1, m) = zeta.adjoint();
  return AlgebraElement{x};
}

}  // namespace

TEST_CASE("geodesic representative of a point") {
  SUBCASE("origin maps to the identity") {
    DomainPoint p{VectorXc::Zero(2)};
    CHECK((point_to_group(p).entries - MatrixXc::Identity(3, 3)).norm() ==
          0.0);
  }
  SUBCASE("corner entry is cosh(atanh |z|)") {
    VectorXc z(2);
    z << 0.5, 0.0;
    const GroupElement g = point_to_group(DomainPoint{z});
    CHECK(g.entries(2, 2).real() ==
          doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-12));
    CHECK(g.entries(2, 2).real() ==
          doctest::Approx(std::cosh(std::atanh(0.5))).epsilon(1e-12));
  }
  SUBCASE("agrees with the exponential of the noncompact element") {
    Rng rng(3);
    for (int m : {1, 2})
      for (int trial = 0; trial < 10; ++trial) {
        const VectorXc z = 0.8 * rng.ball_point(m);
        const GroupElement direct = point_to_group(DomainPoint{z});
        const GroupElement viaexp = exp_algebra(geodesic_generator(z));
        CHECK((direct.entries - viaexp.entries).norm() < 1e-13);
      }
  }
  SUBCASE("Moebius action sends the origin to z") {
    Rng rng(4);
    for (int m : {1, 2})
      for (int trial = 0; trial < 10; ++trial) {
        const VectorXc z = 0.95 * rng.ball_point(m);
        const GroupElement g = point_to_group(DomainPoint{z});
        CHECK(gamma_unitarity_residual(g) < 1e-12);
        // (A*0 + B)(C*0 + d)^{-1} = B/d
        const VectorXc image =
            g.entries.topRightCorner(m, 1) / g.entries(m, m);
        CHECK((image - z).norm() < 1e-12);
      }
  }
  SUBCASE("points outside the ball are rejected") {
    VectorXc z(1);
    z << 1.0;
    CHECK_THROWS_AS(point_to_group(DomainPoint{z}), DomainError);
    z << 1.2;
    CHECK_THROWS_AS(point_to_group(DomainPoint{z}), DomainError);
  }
}

TEST_CASE("coherent state at the origin is the base state") {
  const FockSector s = build_sector(2, 3, 6);
  const CoherentState st = coherent_state(DomainPoint{VectorXc::Zero(2)}, s);
  CHECK(st.vector(0) == Complex(1.0));
  CHECK(st.vector.tail(s.dim() - 1).norm() == 0.0);
  CHECK(st.tail == 0.0);
  CHECK(st.converged);
}

TEST_CASE("coherent state: normalization and closed-form oracle") {
  // The truncated state differs from the truncated closed form at the
  // sqrt(tail) scale (distortion concentrates near the cut), so the norm
  // comparison needs tail << 1e-16; interior components agree at the tail
  // scale itself.
  Rng rng(17);
  for (int m : {1, 2}) {
    for (int trial = 0; trial < 6; ++trial) {
      VectorXc z = rng.ball_point(m);
      if (z.norm() > 0.5) z *= 0.5 / z.norm();
      const int N = m + 1 + static_cast<int>(rng.next() % 4);
      const FockSector s = build_sector(m, N, 50);
      const CoherentState st = coherent_state(DomainPoint{z}, s, 1e-6);
      CHECK(std::abs(st.vector.norm() - 1.0) < 1e-12);
      const VectorXc oracle = closed_form_state(s, z);
      CHECK((st.vector - oracle).norm() < 1e-8);
    }
    {
      // tighter agreement deeper inside the ball
      VectorXc z = 0.3 * rng.ball_point(m);
      const FockSector s = build_sector(m, m + 2, 30);
      const CoherentState st = coherent_state(DomainPoint{z}, s);
      CHECK((st.vector - closed_form_state(s, z)).norm() < 1e-11);
    }
    {
      // |z| = 0.6: interior components still match at 1e-8
      VectorXc z = rng.ball_point(m);
      z *= 0.6 / z.norm();
      const FockSector s = build_sector(m, m + 1, 30);
      const CoherentState st = coherent_state(DomainPoint{z}, s, 1.0);
      const VectorXc oracle = closed_form_state(s, z);
      double low_diff = 0.0;
      for (int j = 0; j < s.dim(); ++j)
        if (s.layer(j) <= s.M / 2)
          low_diff = std::max(low_diff, std::abs(st.vector(j) - oracle(j)));
      CHECK(low_diff < 1e-8);
    }
  }
}

TEST_CASE("chain construction equals the dense truncated exponential") {
  Rng rng(29);
  for (int m : {1, 2}) {
    const FockSector s = build_sector(m, m + 1, 8);
    for (int trial = 0; trial < 4; ++trial) {
      const VectorXc z = 0.7 * rng.ball_point(m);
      const CoherentState st = coherent_state(DomainPoint{z}, s, 1.0);
      const AlgebraElement gen = geodesic_generator(z);
      VectorXc e0 = VectorXc::Zero(s.dim());
      e0(0) = 1.0;
      const VectorXc dense =
          expm_skew_apply(realize(gen, s).entries, e0);
      CHECK((st.vector - dense).norm() < 1e-12);
    }
  }
}

TEST_CASE("truncation tail: monotone in M, drives the converged flag") {
  VectorXc z(2);
  z << 0.45, Complex(0.0, 0.35);
  double prev = 1.0;
  for (int M : {4, 8, 12, 16, 20, 24}) {
    const FockSector s = build_sector(2, 3, M);
    const CoherentState st = coherent_state(DomainPoint{z}, s, 1e-8);
    CHECK(st.tail < prev);
    prev = st.tail;
  }
  const FockSector small = build_sector(2, 3, 4);
  CHECK_FALSE(coherent_state(DomainPoint{z}, small, 1e-8).converged);

  const CoherentState adapted = coherent_state_adaptive(DomainPoint{z}, 2, 3);
  CHECK(adapted.converged);
  CHECK(adapted.tail <= 1e-8);
  CHECK(adapted.sector.M <= 60);
}

TEST_CASE("omega0") {
  SUBCASE("identity group element gives 1") {
    const FockSector s = build_sector(2, 3, 10);
    const OmegaValue om =
        omega0(GroupElement{MatrixXc::Identity(3, 3)}, s);
    CHECK(std::abs(om.value - Complex(1.0)) < 1e-14);
  }
  SUBCASE("abelian family matches (cosh t)^-(N+1) and not (cosh t)^-N") {
    const int N = 3;
    const CartanData cd = cartan_data(2);
    const FockSector s = build_sector(2, N, 40);
    const double t = 0.8;
    const OmegaValue om = omega0(cd.a(t), s, 1e-10);
    CHECK(om.converged);
    const double matched = std::pow(std::cosh(t), -(N + 1.0));
    CHECK(std::abs(om.value - matched) < 1e-6);
    CHECK(std::abs(om.value - std::pow(std::cosh(t), -N)) > 0.05);
    // the printed closed form (1/cosh t)(1 + ln cosh t)^N is far off too
    const double printed =
        std::pow(1.0 + std::log(std::cosh(t)), N) / std::cosh(t);
    CHECK(std::abs(om.value - printed) > 0.5);
  }
  SUBCASE("modulus bounded by one on random group elements") {
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, 3, 30);
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      VectorXr xi(8);
      for (int i = 0; i < 8; ++i) xi(i) = rng.uniform(-0.6, 0.6);
      const OmegaValue om = omega0(exp_algebra(combine(basis, xi)), s);
      CHECK(std::abs(om.value) <= 1.0 + 1e-12);
    }
  }
  SUBCASE("KAK route agrees with the direct exponential route") {
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, 3, 30);
    const RealizedGenerators rg = realize_basis(basis, s);
    Rng rng(37);
    for (int trial = 0; trial < 5; ++trial) {
      VectorXr xi(8);
      for (int i = 0; i < 8; ++i) xi(i) = rng.uniform(-0.35, 0.35);
      const GroupElement g = exp_algebra(combine(basis, xi));
      const OmegaValue kak_route = omega0(g, s, 1e-8);
      // direct route: <e0| T(g) |e0> with T(g) = exp(xi^A X^_A)
      VectorXc e0 = VectorXc::Zero(s.dim());
      e0(0) = 1.0;
      const Complex direct = e0.dot(represent(xi, rg, basis).entries * e0);
      CHECK(std::abs(kak_route.value - direct) < 1e-8);
    }
  }
  SUBCASE("stabilizer character matches the represented compact element") {
    const GeneratorBasis basis = build_basis(2);
    const FockSector s = build_sector(2, 4, 6);
    const RealizedGenerators rg = realize_basis(basis, s);
    Rng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
      VectorXr xi = VectorXr::Zero(8);
      for (int i = 0; i < 4; ++i) xi(i) = rng.uniform(-1.0, 1.0);  // compact
      const GroupElement k = exp_algebra(combine(basis, xi));
      VectorXc e0 = VectorXc::Zero(s.dim());
      e0(0) = 1.0;
      const VectorXc te0 = represent(xi, rg, basis).entries * e0;
      const Complex chi = stabilizer_character(k, s.N);
      CHECK((te0 - chi * e0).norm() < 1e-12);
      CHECK(std::abs(std::abs(chi) - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("coordinate functions xi_A") {
  const GeneratorBasis basis = build_basis(2);
  const int N = 5;

  SUBCASE("noncompact directions vanish at the origin") {
    const FockSector s = build_sector(2, N, 8);
    const CoherentState st =
        coherent_state(DomainPoint{VectorXc::Zero(2)}, s);
    for (int a = 4; a < 8; ++a) CHECK(std::abs(xi(basis, a, st)) < 1e-15);
  }
  SUBCASE("u(1) direction at the origin fixed by the normalization") {
    const FockSector s = build_sector(2, N, 8);
    const CoherentState st =
        coherent_state(DomainPoint{VectorXc::Zero(2)}, s);
    // <X^_4> = -D(N+1) with D = -2i/sqrt(3): xi = +2(N+1)/(sqrt(3) N)
    const double expect = 2.0 * (N + 1) / (std::sqrt(3.0) * N);
    CHECK(xi(basis, 3, st) == doctest::Approx(expect).epsilon(1e-13));
  }
  SUBCASE("pairings are purely imaginary") {
    Rng rng(43);
    const FockSector s = build_sector(2, N, 25);
    for (int trial = 0; trial < 4; ++trial) {
      const VectorXc z = 0.5 * rng.ball_point(2);
      const CoherentState st = coherent_state(DomainPoint{z}, s);
      for (int a = 0; a < 8; ++a)
        CHECK(std::abs(xi_pairing(basis, a, st).real()) < 1e-12);
    }
  }
  SUBCASE("stable under truncation growth") {
    VectorXc z(2);
    z << Complex(0.42, 0.3), Complex(-0.25, 0.1);  // |z| ~ 0.58
    for (int a : {1, 3, 4, 6}) {
      const FockSector s1 = build_sector(2, N, 35);
      const FockSector s2 = build_sector(2, N, 40);
      const double v1 = xi(basis, a, coherent_state(DomainPoint{z}, s1));
      const double v2 = xi(basis, a, coherent_state(DomainPoint{z}, s2));
      CHECK(std::abs(v1 - v2) < 1e-9);
    }
  }
}

TEST_CASE("overlap depends on the invariant distance with weight N+1") {
  // |<w|z>|^2 = [(1-|w|^2)(1-|z|^2) / |1-w^dag z|^2]^(N+1): the Fock charge
  // N sector carries the series of Bergman weight N+1.
  Rng rng(47);
  const int N = 4;
  const FockSector s = build_sector(2, N, 30);
  for (int trial = 0; trial < 6; ++trial) {
    const VectorXc z = 0.5 * rng.ball_point(2);
    const VectorXc w = 0.5 * rng.ball_point(2);
    const CoherentState sz = coherent_state(DomainPoint{z}, s);
    const CoherentState sw = coherent_state(DomainPoint{w}, s);
    const double lhs = std::norm(sw.vector.dot(sz.vector));
    const double base = (1.0 - w.squaredNorm()) * (1.0 - z.squaredNorm()) /
                        std::norm(Complex(1.0) - w.dot(z));
    CHECK(std::abs(lhs - std::pow(base, N + 1)) < 1e-6);
    // the naive weight-N form is measurably different
    CHECK(std::abs(lhs - std::pow(base, N)) > 1e-3);
  }
}
