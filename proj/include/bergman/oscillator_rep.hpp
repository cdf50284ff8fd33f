// bergman: oscillator realization of su(m,1) on a charge sector.
//
// An algebra element X = [[A, B], [B^†, D]] is realized as the bilinear
//   X^ = Z^† Γ X Z = a^† A a + a^† B b^† - b B^† a - b D b^†,
// the interior signs coming from Z^† Γ = (a^†, -b).  The overall sign is the
// one under which the map closes as a homomorphism,
// [X^, Y^] = [X,Y]^; with the opposite overall sign the commutator picks up
// a global minus ([Z^†ΓXZ, Z^†ΓYZ] = +Z^†Γ[X,Y]Z) and the closure test
// fails, which is how the convention is validated here.
//
// Realized generators are exactly anti-Hermitian at assembly, commute with
// the charge, and close under the commutator on the truncation interior.
// T^(ξ) = exp(ξ^A X^_A) is exactly unitary because the truncated generators
// stay anti-Hermitian.
#ifndef BERGMAN_OSCILLATOR_REP_HPP
#define BERGMAN_OSCILLATOR_REP_HPP

#include <vector>

#include "bergman/fock_space.hpp"
#include "bergman/lie_algebra.hpp"
#include "bergman/types.hpp"

namespace bergman {

struct RealizedGenerators {
  FockSector sector;
  std::vector<SectorOperator> hats;  // aligned with GeneratorBasis order
};

/// Dense realization of one algebra element, assembled from fock bilinears.
SectorOperator realize(const AlgebraElement& x, const FockSector& sector);

RealizedGenerators realize_basis(const GeneratorBasis& basis,
                                 const FockSector& sector);

/// Matrix-free X^ v (same ladder stencil as realize(); used where forming
/// dense generators at large M would be wasteful).
VectorXc apply_realized(const AlgebraElement& x, const FockSector& sector,
                        const VectorXc& v);

/// max entry of |X^ + X^†|; zero at assembly by construction.
double antihermiticity_residual(const SectorOperator& op);

/// Max over generator pairs of ||P([X^_A, X^_B] - f^C_{AB} X^_C) P||_F with
/// P the interior projector.  Requires M >= 2 so the interior is nonempty.
double commutator_check(const RealizedGenerators& rg,
                        const GeneratorBasis& basis);

/// T^(ξ) = exp(ξ^A X^_A) through the Hermitian eigendecomposition route.
SectorOperator represent(const VectorXr& xi, const RealizedGenerators& rg,
                         const GeneratorBasis& basis);

}  // namespace bergman

#endif
