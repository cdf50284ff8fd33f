// bergman: coherent states |z> = T^(g_z)|z_0> over the unit ball.
//
// g_z is the geodesic coset representative, the exponential of the
// noncompact element [[0, ζ], [ζ^†, 0]] with ζ = (z/|z|) atanh|z|; in closed
// form g_z = [[I + z z^†/(c(1+c)), z/c], [z^†/c, 1/c]], c = sqrt(1-|z|^2).
//
// The realized generator of g_z couples the base state only to the chain
// v_k ∝ [(a^†·u) b^†]^k |z_0>, on which it acts tridiagonally with ladder
// weights sqrt((k+1)(N+k+1)); the chain and its orthogonal complement are
// both invariant under the truncated generator, so exponentiating the
// (M+1)x(M+1) tridiagonal block reproduces the truncated T^(g_z)|z_0>
// exactly at a fraction of the dense cost.
//
// The truncation tail reported with each state is the squared norm of the
// components on the top two retained layers.
#ifndef BERGMAN_COHERENT_STATES_HPP
#define BERGMAN_COHERENT_STATES_HPP

#include "bergman/fock_space.hpp"
#include "bergman/lie_algebra.hpp"
#include "bergman/types.hpp"

namespace bergman {

inline constexpr double kDefaultTailTol = 1e-8;

struct DomainPoint {
  VectorXc z;
  int m() const { return static_cast<int>(z.size()); }
};

/// Throws DomainError unless 1 - |z|^2 > 0.
void require_in_domain(const DomainPoint& p);

GroupElement point_to_group(const DomainPoint& p);

struct CoherentState {
  DomainPoint point;
  FockSector sector;
  VectorXc vector;
  double tail = 0.0;
  bool converged = true;
};

CoherentState coherent_state(const DomainPoint& p, const FockSector& sector,
                             double tail_tol = kDefaultTailTol);

/// Escalates M in steps of 5 (from at least m_start) until the tail estimate
/// meets tail_tol or m_max is hit; the returned state carries its sector.
CoherentState coherent_state_adaptive(const DomainPoint& p, int m, int N,
                                      double tail_tol = kDefaultTailTol,
                                      int m_start = 10, int m_max = 60);

/// Smallest truncation M (capped) whose predicted top-two-layer mass is
/// below tol/2, from the exact layer distribution of the untruncated state.
int suggest_truncation(double znorm, int N, double tol, int m_max);

/// Character of the stabilizer K on the base state:
/// T^(k)|z_0> = (k_{m+1,m+1})^{-(N+1)} |z_0> for block-diagonal k.
Complex stabilizer_character(const GroupElement& k, int N);

struct OmegaValue {
  Complex value;
  double tail = 0.0;
  bool converged = true;
};

/// <z_0| T^(g) |z_0> through the K-A-K route: the K factors contribute
/// exact character phases and the abelian factor is evaluated on the chain.
OmegaValue omega0(const GroupElement& g, const FockSector& sector,
                  double tail_tol = kDefaultTailTol);

/// Coordinate function ξ_A(z) = (1/N) Im <z| X^_A |z>  (real convention;
/// the expectation of an anti-Hermitian operator is purely imaginary).
double xi(const GeneratorBasis& basis, int a, const CoherentState& state);

/// The raw complex pairing (1/N) <z| X^_A |z> used by the star-product layer.
Complex xi_pairing(const GeneratorBasis& basis, int a,
                   const CoherentState& state);

}  // namespace bergman

#endif
