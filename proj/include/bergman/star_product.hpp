// bergman: operator symbols and the coherent-state star product.
//
// Symbols F(z, z̄) = <z|F^|z>; the star product is operator composition seen
// through symbols, (F * G)(z) = <z|F^ G^|z>.  Coordinate functions are the
// normalized generator pairings ξ_A = (1/N)<z|X^_A|z> (purely imaginary);
// their star products obey the exact commutator identity
//   (ξ_A * ξ_B - ξ_B * ξ_A)(z) = (1/N) f^C_{AB} ξ_C(z)
// up to truncation tail, and approach the pointwise product at rate 1/N.
#ifndef BERGMAN_STAR_PRODUCT_HPP
#define BERGMAN_STAR_PRODUCT_HPP

#include <span>
#include <vector>

#include "bergman/coherent_states.hpp"
#include "bergman/fock_space.hpp"
#include "bergman/lie_algebra.hpp"
#include "bergman/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace bergman {

struct Symbol {
  SectorOperator op;
  Complex evaluate(const CoherentState& state) const;
};

/// <z|F^|z>.  Throws DomainError on sector mismatch.
Complex symbol(const SectorOperator& op, const CoherentState& state);

/// (F * G)(z) = <z|F^ G^|z>, one matrix product and one bilinear form.
Complex star(const SectorOperator& f, const SectorOperator& g,
             const CoherentState& state);

/// F_{A1..An}(z) = (-1)^n <z| X^_{A1} ... X^_{An} |z>, matrix-free.
Complex generator_symbol(const GeneratorBasis& basis,
                         std::span<const int> indices,
                         const CoherentState& state);

/// Cached generator actions X^_A |z> for one coherent state.
struct CoherentFrame {
  CoherentState state;
  std::vector<VectorXc> applied;   // X^_A |z>
  std::vector<Complex> pairings;   // (1/N) <z|X^_A|z>
};
CoherentFrame make_frame(const GeneratorBasis& basis,
                         const CoherentState& state);

struct StarCoordinates {
  Complex star_value;         // (ξ_A * ξ_B)(z) = (1/N^2)<X^_A X^_B>
  double commutator_residual; // vs (1/N) f^C_{AB} ξ_C, exact identity
  double symmetric_part;      // Re of the symmetrized star value
  Complex xi_a, xi_b;
};
StarCoordinates star_coordinates(const GeneratorBasis& basis, int a, int b,
                                 const CoherentFrame& frame);

/// Fixed sample grid: rings |z| in {0.1, 0.3, 0.5} with 8 seeded directions
/// each (24 points), reproducible for a given seed.
std::vector<DomainPoint> standard_z_grid(int m, std::uint64_t seed);

struct StarSample {
  VectorXc z;
  Complex star_value;
  Complex pointwise;       // ξ_A(z) ξ_B(z)
  Complex commutator_part; // (ξ_A * ξ_B - ξ_B * ξ_A)(z)
};

struct StarFit {
  int N = 0;
  double a_n = 0.0;
  double b_n = 0.0;
  double residual = 0.0;   // relative LS residual of the two-parameter model
  double condition = 0.0;  // condition number of the design matrix
  bool ok = true;          // false when the sample set is degenerate
  double max_diff = 0.0;   // max_z |ξ_A * ξ_B - ξ_A ξ_B|
  double max_comm_residual = 0.0;
};

struct StarExpansion {
  int a = 0, b = 0;
  std::vector<StarSample> samples;  // for the largest N in the range
  std::vector<StarFit> fits;        // per N
  double exponent_a = 0.0;          // 1/N scaling exponent of A_N
  double exponent_b = 0.0;          // and of B_N (diagonal pairs only)
  double slope = 0.0;               // log-log slope of max_diff vs N
};

/// Per-N least squares of the symmetric part against
/// (1+A_N) ξ_A ξ_B + B_N δ_AB over the sample set, plus 1/N scaling fits.
/// Requires >= 8 sample points and >= 4 values of N.
StarExpansion fit_expansion(const GeneratorBasis& basis, int a, int b,
                            std::span<const int> n_values,
                            std::span<const DomainPoint> samples,
                            double tail_tol = 1e-9, int m_max = 60);

nlohmann::json expansion_to_json(const StarExpansion& e);
std::string expansion_to_csv(const StarExpansion& e);

}  // namespace bergman

#endif
