#pragma once

// Metric-free Lie algebra structure: brackets, characteristic ideals, derivations.

#include "mlie/common.hpp"
#include "mlie/pseudolin.hpp"

#include <optional>
#include <vector>

namespace mlie {

/// [e_i, e_j] = value, with 0-based indices.
struct BracketTerm {
  int i = 0;
  int j = 0;
  Vector value;
};

/// Real Lie algebra given by structure constants in a fixed basis e_0..e_{n-1}.
///
/// Only the brackets [e_i, e_j] with i < j are stored; the others are read
/// through antisymmetry, so [u, v] = -[v, u] holds bit-for-bit.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// The abelian algebra of dimension n.
  explicit LieAlgebra(int n);

  /// Builds from a bracket list without checking the Jacobi identity. A term with
  /// i > j is stored as -value on (j, i); repeated pairs accumulate; i == j is rejected.
  static LieAlgebra from_brackets(int n, const std::vector<BracketTerm>& terms);
  /// Same, then rejects (InvalidInput) a Jacobi defect above tol * scale.
  static LieAlgebra checked(int n, const std::vector<BracketTerm>& terms, double tol = kLinearTol);

  int dim() const { return n_; }

  /// [e_i, e_j].
  Vector structure(int i, int j) const;
  double structure(int i, int j, int k) const;
  Vector bracket(const Vector& u, const Vector& v) const;

  /// Largest |c_ij^k|.
  double max_constant() const;
  bool is_abelian() const { return max_constant() == 0.0; }

  /// Structure constants in the basis formed by the columns of P (invertible).
  LieAlgebra in_basis(const Matrix& p) const;

  /// Nonzero brackets [e_i, e_j], i < j, in lexicographic order.
  std::vector<BracketTerm> brackets() const;

  bool operator==(const LieAlgebra& other) const;

 private:
  std::size_t pair_index(int i, int j) const;

  int n_ = 0;
  std::vector<Vector> upper_;
};

struct Derivation {
  Matrix matrix;
  double trace() const { return matrix.trace(); }
};

/// Max over basis triples of the sup-norm of the cyclic Jacobi sum.
double jacobi_defect(const LieAlgebra& a);

/// Matrix of v -> [u, v].
Matrix ad(const LieAlgebra& a, const Vector& u);
/// ad(e_i) for every basis vector.
std::vector<Matrix> ad_basis(const LieAlgebra& a);

Subspace center(const LieAlgebra& a, double tol = kLinearTol);
Subspace derived_ideal(const LieAlgebra& a, double tol = kLinearTol);
/// g^0 = g, g^{k+1} = [g, g^k], stopping when the dimension stops dropping
/// (the last entry is the zero subspace exactly when the algebra is nilpotent).
std::vector<Subspace> lower_central_series(const LieAlgebra& a, double tol = kLinearTol);
bool is_nilpotent(const LieAlgebra& a, double tol = kLinearTol);

/// Basis of Der(a) in reduced echelon form over the entries of D (column-major
/// order): each element has a unit entry at its own pivot and zeros at the others.
std::vector<Derivation> derivation_space(const LieAlgebra& a, double tol = kLinearTol);

/// max over i<j of |E[e_i,e_j] - [E e_i, e_j] - [e_i, E e_j]|_inf.
double derivation_defect(const LieAlgebra& a, const Matrix& e);

/// The identity for an abelian algebra, otherwise the first element of
/// derivation_space with nonzero trace; nullopt when the trace vanishes on all of Der(a).
std::optional<Derivation> find_nonzero_trace_derivation(const LieAlgebra& a, double tol = kLinearTol);

}  // namespace mlie
