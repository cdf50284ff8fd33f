// bergman: the su(m,1) matrix Lie algebra and group, m in {1,2}.
//
// Group elements g satisfy g^† Γ g = g Γ g^† = Γ, det g = 1 with
// Γ = diag(1,...,1,-1).  Algebra elements satisfy X^† Γ = -Γ X, i.e.
// block form [[A, B], [B^†, D]] with A^† = -A, D^† = -D, tr(A+D) = 0.
//
// Generator basis (fixed, documented ordering): Gell-Mann style matrices of
// the complexified traceless (m+1)x(m+1) algebra, each multiplied by i or 1
// so that the su(m,1) condition holds; compact generators (ΓXΓ = X) come
// first, noncompact last.  Normalization: tr(X_A X_B) diagonal with entries
// -2 (compact) / +2 (noncompact).  The restricted Cartan direction H_1 is a
// basis element (index cartan_index()).
#ifndef BERGMAN_LIE_ALGEBRA_HPP
#define BERGMAN_LIE_ALGEBRA_HPP

#include <vector>

#include "bergman/types.hpp"

#include <nlohmann/json_fwd.hpp>

namespace bergman {

struct GroupElement {
  MatrixXc entries;
  int m() const { return static_cast<int>(entries.rows()) - 1; }
};

struct AlgebraElement {
  MatrixXc entries;
  int m() const { return static_cast<int>(entries.rows()) - 1; }
};

/// ||g^† Γ g - Γ|| + ||g Γ g^† - Γ||  (Frobenius).
double gamma_unitarity_residual(const GroupElement& g);
/// |det g - 1|.
double special_residual(const GroupElement& g);
/// ||X^† Γ + Γ X||  (Frobenius).
double algebra_condition_residual(const AlgebraElement& x);

struct GeneratorBasis {
  int m = 0;
  std::vector<MatrixXc> generators;     // X_A
  std::vector<MatrixXr> structure;      // structure[C](A,B) = f^C_{AB}
  std::vector<bool> compact;            // ΓXΓ == X
  int dim() const { return static_cast<int>(generators.size()); }
  /// Index of H_1 (the restricted Cartan direction) within the basis.
  int cartan_index() const { return m == 1 ? 1 : 6; }
};

/// Builds the documented basis with structure constants and compact flags.
/// Throws ConfigError unless m is 1 or 2.
GeneratorBasis build_basis(int m);

/// f^C_{AB} from the trace form: tr([X_A,X_B] X_D) = f^C_{AB} tr(X_C X_D).
/// Throws InternalError if the Gram matrix of the generators is singular.
std::vector<MatrixXr> structure_constants(
    const std::vector<MatrixXc>& generators);

/// Eigenvalues of ad(H_1) on the real algebra, clustered within 1e-8 and
/// sorted ascending.  m=2: {-2,-1,-1,0,0,+1,+1,+2}; m=1: {-2,0,+2}.
std::vector<double> restricted_root_spectrum(const GeneratorBasis& basis);

/// The abelian direction H_t and its exponential a_t (closed form).
struct CartanData {
  int m = 1;
  AlgebraElement H(double t) const;
  GroupElement a(double t) const;
};
CartanData cartan_data(int m);

/// g = k^† a_t q with k, q in K = S(U(m)xU(1)) block-diagonal, t >= 0.
/// cosh t = |g_{m+1,m+1}|.  Gauge fixing: the residual centralizer phase is
/// spent making q_{m+1,m+1} real positive (for m=1 the sign ambiguity is
/// fixed the same way); for t ~ 0 the convention is k = g^†, q = I.
struct KakFactors {
  GroupElement k;
  double t = 0.0;
  GroupElement q;
};
KakFactors kak_decompose(const GroupElement& g);

/// Matrix exponential of an algebra element (Pade scaling-and-squaring).
GroupElement exp_algebra(const AlgebraElement& x);

/// ξ^A X_A.
AlgebraElement combine(const GeneratorBasis& basis, const VectorXr& xi);

nlohmann::json basis_to_json(const GeneratorBasis& basis);

}  // namespace bergman

#endif
