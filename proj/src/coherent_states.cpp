#include "bergman/coherent_states.hpp"

#include <cmath>

#include "bergman/matrix_exp.hpp"
#include "bergman/oscillator_rep.hpp"

namespace bergman {

void require_in_domain(const DomainPoint& p) {
  if (1.0 - p.z.squaredNorm() <= 0.0)
    throw DomainError("point outside the unit ball: |z|^2 = " +
                      std::to_string(p.z.squaredNorm()));
}

GroupElement point_to_group(const DomainPoint& p) {
  require_in_domain(p);
  const int m = p.m();
  const double c = std::sqrt(1.0 - p.z.squaredNorm());
  MatrixXc g = MatrixXc::Zero(m + 1, m + 1);
  g.topLeftCorner(m, m) =
      MatrixXc::Identity(m, m) + p.z * p.z.adjoint() / (c * (1.0 + c));
  g.topRightCorner(m, 1) = p.z / c;
  g.bottomLeftCorner(1, m) = p.z.adjoint() / c;
  g(m, m) = 1.0 / c;
  return GroupElement{g};
}

namespace {

// exp(t (K_+ - K_-)) e_0 on the weight-(N+1) su(1,1) chain of length
// len+1: tridiagonal, ladder c_{k+1} = sqrt((k+1)(N+k+1)).
VectorXc chain_exponential(double t, int N, int len) {
  const int n = len + 1;
  MatrixXc a = MatrixXc::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c =
        std::sqrt(static_cast<double>(k + 1) * static_cast<double>(N + k + 1));
    a(k + 1, k) = t * c;
    a(k, k + 1) = -t * c;
  }
  VectorXc e0 = VectorXc::Zero(n);
  e0(0) = 1.0;
  return expm_skew_apply(a, e0);
}

}  // namespace

CoherentState coherent_state(const DomainPoint& p, const FockSector& sector,
                             double tail_tol) {
  require_in_domain(p);
  if (p.m() != sector.m)
    throw InternalError("coherent_state: point/sector dimension mismatch");

  CoherentState st;
  st.point = p;
  st.sector = sector;
  st.vector = VectorXc::Zero(sector.dim());

  const double znorm = p.z.norm();
  if (znorm == 0.0) {
    st.vector(0) = 1.0;
    st.tail = 0.0;
    st.converged = true;
    return st;
  }

  const double r = std::atanh(znorm);
  const VectorXc u = p.z / znorm;
  const VectorXc w = chain_exponential(r, sector.N, sector.M);

  if (sector.m == 1) {
    Complex phase = 1.0;
    for (int k = 0; k <= sector.M; ++k) {
      st.vector(k) = w(k) * phase;
      phase *= u(0);
    }
  } else {
    // Spread each chain amplitude over its layer:
    // v_k[(m1, k-m1)] = sqrt(C(k, m1)) u1^m1 u2^(k-m1).
    for (int k = 0; k <= sector.M; ++k) {
      std::vector<double> binom(k + 1);
      binom[0] = 1.0;
      for (int j = 0; j < k; ++j)
        binom[j + 1] = binom[j] * static_cast<double>(k - j) /
                       static_cast<double>(j + 1);
      Complex pow1 = 1.0;
      std::vector<Complex> pow2(k + 1);
      pow2[0] = 1.0;
      for (int j = 1; j <= k; ++j) pow2[j] = pow2[j - 1] * u(1);
      const int offset = k * (k + 1) / 2;
      for (int m1 = 0; m1 <= k; ++m1) {
        st.vector(offset + m1) = w(k) * std::sqrt(binom[m1]) * pow1 *
                                 pow2[k - m1];
        pow1 *= u(0);
      }
    }
  }

  st.tail = std::norm(w(sector.M));
  if (sector.M >= 1) st.tail += std::norm(w(sector.M - 1));
  st.converged = st.tail <= tail_tol;
  st.vector.normalize();
  return st;
}

int suggest_truncation(double znorm, int N, double tol, int m_max) {
  const double s = znorm * znorm;
  if (s == 0.0) return 2;
  // Layer mass of the untruncated state: p_k = C(N+k,k) s^k (1-s)^(N+1).
  double pk = std::pow(1.0 - s, N + 1);
  double cum = pk;   // sum of p_j for j < k after the update below
  double prev = pk;  // p_{k-1}
  for (int k = 1; k <= m_max; ++k) {
    pk *= s * static_cast<double>(N + k) / static_cast<double>(k);
    // (1 - cum) + prev = Σ_{j >= k-1} p_j bounds the truncated state's
    // top-two-layer mass for M = k.
    if (k >= 2 && (1.0 - cum) + prev <= 0.5 * tol) return k;
    cum += pk;
    prev = pk;
  }
  return m_max;
}

CoherentState coherent_state_adaptive(const DomainPoint& p, int m, int N,
                                      double tail_tol, int m_start,
                                      int m_max) {
  require_in_domain(p);
  int trunc = std::max(m_start, suggest_truncation(p.z.norm(), N, tail_tol,
                                                   m_max));
  for (;;) {
    const FockSector sector = build_sector(m, N, trunc);
    CoherentState st = coherent_state(p, sector, tail_tol);
    if (st.converged || trunc >= m_max) return st;
    trunc = std::min(trunc + 5, m_max);
  }
}

Complex stabilizer_character(const GroupElement& k, int N) {
  // For block-diagonal k = exp(diag(A, D)) the realized generator acts on
  // the base state as -D(N+1), so the phase is (k_{m+1,m+1})^{-(N+1)}.
  const int m = k.m();
  return ipow(std::conj(k.entries(m, m)), N + 1);
}

OmegaValue omega0(const GroupElement& g, const FockSector& sector,
                  double tail_tol) {
  const KakFactors kak = kak_decompose(g);
  const VectorXc w = chain_exponential(kak.t, sector.N, sector.M);

  OmegaValue out;
  out.tail = std::norm(w(sector.M));
  if (sector.M >= 1) out.tail += std::norm(w(sector.M - 1));
  out.converged = out.tail <= tail_tol;
  out.value = std::conj(stabilizer_character(kak.k, sector.N)) *
              stabilizer_character(kak.q, sector.N) * w(0);
  return out;
}

Complex xi_pairing(const GeneratorBasis& basis, int a,
                   const CoherentState& state) {
  const VectorXc xv = apply_realized(AlgebraElement{basis.generators[a]},
                                     state.sector, state.vector);
  return state.vector.dot(xv) / static_cast<double>(state.sector.N);
}

double xi(const GeneratorBasis& basis, int a, const CoherentState& state) {
  return xi_pairing(basis, a, state).imag();
}

}  // namespace bergman
