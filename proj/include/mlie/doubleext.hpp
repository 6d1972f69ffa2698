#pragma once

// Double extensions of a Euclidean space by a skew map K and an endomorphism D,
// and the inverse construction for Ricci-flat Lorentzian nilpotent algebras.

#include "mlie/common.hpp"
#include "mlie/curvature.hpp"

#include <optional>
#include <random>

namespace mlie {

/// Data (K, D, mu, b) on a Euclidean core V = R^v_dim with the standard dot product.
struct ExtensionData {
  ExtensionData() = default;
  /// K is antisymmetrized as (K - K^T)/2, so it is skew bit-for-bit.
  ExtensionData(Matrix k, Matrix d, double mu, Vector b);

  int v_dim() const { return static_cast<int>(d.rows()); }
  /// max(1, largest entry of K, D, b and |mu|) squared; traces and the Lie
  /// residual are quadratic in the data.
  double scale() const;

  Matrix k;
  Matrix d;
  double mu = 0.0;
  Vector b;
};

struct Admissibility {
  bool is_lie = false;
  bool is_nilpotent = false;
  bool is_einstein = false;
  double lie_residual = 0.0;    // |K D + D^T K - mu K|_inf
  double trace_residual = 0.0;  // |4 mu tr D - tr K^2 - 2 tr D^2 - 2 tr D D^T|
};

Admissibility check_admissible(const ExtensionData& d, double tol = kLinearTol);

/// The algebra on (e, f_1..f_v, ebar) with [ebar, e] = mu e, [ebar, u] = D u + <b, u> e,
/// [u, v] = <K u, v> e, and the Lorentzian metric <e, ebar> = 1, identity on the f block.
/// Throws NotLie unless check_admissible(d, tol).is_lie.
MetricLieAlgebra extend(const ExtensionData& d, double tol = kLinearTol);

/// ric(ebar, ebar) = -tr(D^2)/2 - tr(D D^T)/2 - tr(K^2)/4 + mu tr(D). Throws NotLie.
double ricci_ebar(const ExtensionData& d, double tol = kLinearTol);

struct Decomposition {
  ExtensionData data;
  /// Columns are (e, f_1..f_v, ebar) in the coordinates of the input algebra.
  Matrix basis_change;
  /// Sup-norm distance between extend(data) and the input rewritten in basis_change
  /// (structure constants and Gram entries).
  double model_residual = 0.0;
};

/// Throws NotApplicable unless m is nilpotent, Lorentzian and Ricci-flat at
/// verdict_tol. nullopt when the center carries no isotropic vector.
std::optional<Decomposition> decompose(const MetricLieAlgebra& m, double tol = kLinearTol,
                                       double verdict_tol = kVerdictTol);

struct KDPair {
  Matrix k;
  Matrix d;
};

/// D = [[D1, D2], [0, K0^{-1} S]], K = [[0, 0], [0, K0]] on F + F^perp; then
/// K D + D^T K = 0. Throws SingularK0 when K0 is singular, InvalidInput on shape
/// errors, non-skew K0 or non-symmetric S.
KDPair kd_generate(int f_dim, int fperp_dim, const Matrix& d1, const Matrix& d2, const Matrix& k0,
                   const Matrix& s, double tol = kLinearTol);

/// Two-step nilpotent algebra on (e, z_1..z_p, ebar, e_1..e_q) plus an abelian
/// Euclidean summand, with [ebar, e_i] = alpha_i e + sum_k c_ik z_k and
/// [e_i, e_j] = a_ij e. Throws ConstraintViolation unless
/// sum_ij a_ij^2 = 2 sum_ik c_ik^2; InvalidInput on shape errors or non-skew a.
MetricLieAlgebra two_step_extension(int p, int q, const Vector& alpha, const Matrix& c, const Matrix& a,
                               int abelian_dim, double tol = kLinearTol);

/// Random data with mu = 0, D nilpotent, K D + D^T K = 0 and K rescaled so that
/// tr K^2 + 2 tr D^2 + 2 tr D D^T = 0 (Ricci-flat nilpotent extension).
ExtensionData random_admissible_nilpotent(int v_dim, std::mt19937_64& rng);

/// Random data with K D + D^T K = mu K and mu drawn away from zero; not Einstein in general.
ExtensionData random_lie_admissible(int v_dim, std::mt19937_64& rng);

}  // namespace mlie
