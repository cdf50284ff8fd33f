// bergman: truncated charge-sector Fock space.
//
// Oscillators: m modes a_alpha and one mode b with Z = (a_1..a_m, b^†)^T,
// [z_a, z_b^†] = Γ_ab.  The charge n_b - Σ n_a is conserved by every
// operator built here; the sector with charge N is spanned by states
// |m_1..m_m; n>, n = N + Σ m_alpha.  Truncation keeps Σ m_alpha <= M, so
// dim = C(M+m, m).  State order is graded lexicographic in (Σ m_alpha, m_1);
// state 0 is the base state |0,...,0; N>.
//
// Matrix elements reaching Σ m_alpha = M+1 are dropped; operator algebra
// identities therefore hold exactly only on the interior Σ m_alpha <= M-1.
#ifndef BERGMAN_FOCK_SPACE_HPP
#define BERGMAN_FOCK_SPACE_HPP

#include <array>
#include <vector>

#include "bergman/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace bergman {

struct FockSector {
  int m = 0;  // number of a-modes (1 or 2)
  int N = 0;  // conserved charge n_b - Σ n_a (representation label)
  int M = 0;  // truncation: max Σ m_alpha
  std::vector<std::array<int, 2>> states;  // (m_1, m_2); m_2 = 0 when m == 1

  int dim() const { return static_cast<int>(states.size()); }
  int layer(int idx) const { return states[idx][0] + states[idx][1]; }
  int b_quanta(int idx) const { return N + layer(idx); }

  /// Index of (m1, m2), or -1 outside the truncation.  Closed form from the
  /// graded-lex order.
  int index_of(int m1, int m2) const {
    const int k = m1 + m2;
    if (m1 < 0 || m2 < 0 || k > M) return -1;
    if (m == 1) return m2 == 0 ? m1 : -1;
    return k * (k + 1) / 2 + m1;
  }

  bool same_sector(const FockSector& other) const {
    return m == other.m && N == other.N && M == other.M;
  }
};

/// Throws ConfigError for m outside {1,2}, N below the discrete-series
/// bound N >= m+1, or M < 0.
FockSector build_sector(int m, int N, int M);

struct SectorOperator {
  FockSector sector;
  MatrixXc entries;
};

enum class Bilinear {
  ADagA,     // a^†_alpha a_beta
  ADagBDag,  // a^†_alpha b^†
  BA,        // b a_alpha
  BBDag,     // b b^†
};

/// Dense matrix of one oscillator bilinear by the standard ladder rules.
/// alpha/beta are 0-based mode indices (ignored where not applicable).
SectorOperator bilinear_matrix(const FockSector& sector, Bilinear kind,
                               int alpha = 0, int beta = 0);

/// Diagonal operator measuring n_b - Σ n_a; equals N * Identity on a sector.
SectorOperator number_operator(const FockSector& sector);

/// Projector onto the interior Σ m_alpha <= M-1 (diagonal 0/1).
MatrixXc interior_projector(const FockSector& sector);

nlohmann::json sector_to_json(const FockSector& sector);

}  // namespace bergman

#endif
