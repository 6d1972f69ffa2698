#pragma once

// Linear algebra over a (possibly indefinite) nondegenerate symmetric form.

#include "mlie/common.hpp"

#include <optional>
#include <ostream>
#include <string_view>

namespace mlie {

/// Symmetric bilinear form on R^n, stored as its Gram matrix in the working basis.
class Gram {
 public:
  Gram() = default;
  /// Validates shape and finiteness, then symmetrizes as (M + M^T)/2 so the
  /// stored matrix is symmetric bit-for-bit.
  explicit Gram(const Matrix& m);

  static Gram identity(Index n);
  static Gram diagonal(const Vector& d);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }
  double inner(const Vector& u, const Vector& v) const { return u.dot(m_ * v); }

  /// Pullback P^T G P: the form expressed in the basis given by the columns of P.
  Gram congruent(const Matrix& p) const { return Gram(p.transpose() * m_ * p); }

 private:
  Matrix m_;
};

struct Signature {
  int minus = 0;
  int plus = 0;
  int null = 0;

  bool operator==(const Signature&) const = default;
  bool is_lorentzian() const { return minus == 1 && null == 0; }
  bool is_euclidean() const { return minus == 0 && null == 0; }
};

std::ostream& operator<<(std::ostream& os, const Signature& s);

/// A linear subspace of R^ambient given by a linearly independent spanning list
/// (the columns of basis()).
class Subspace {
 public:
  Subspace() = default;
  /// Throws InvalidInput unless the columns are linearly independent at kLinearTol.
  Subspace(Index ambient_dim, const Matrix& vectors);

  /// Column space of an arbitrary spanning matrix (orthonormal basis, SVD-based).
  /// See column_space for `reference`.
  static Subspace span_of(const Matrix& spanning, double tol = kLinearTol, double reference = 0.0);
  static Subspace zero(Index ambient_dim);
  static Subspace whole(Index ambient_dim);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  /// Euclidean-orthonormal basis of the same subspace.
  Matrix orthonormal_basis() const;
  /// Euclidean distance from v to the subspace, relative to max(1, |v|).
  double distance(const Vector& v) const;
  /// Largest relative distance of a basis vector of `other` to this subspace.
  double inclusion_residual(const Subspace& other) const;

 private:
  Index ambient_ = 0;
  Matrix basis_;
};

enum class SubspaceTag {
  EuclideanNondegenerate,
  LorentzianNondegenerate,
  /// Nondegenerate restriction with two or more negative directions; only
  /// reachable in ambient spaces that are not Lorentzian.
  IndefiniteNondegenerate,
  Degenerate,
};

std::string_view to_string(SubspaceTag tag);

struct SubspaceClass {
  SubspaceTag tag = SubspaceTag::EuclideanNondegenerate;
  int null_dim = 0;
  Signature restricted;
};

/// Eigenvalue counts below -tol*scale, above +tol*scale and in between,
/// with scale = max(1, largest |eigenvalue|). Ties at the boundary count as null.
Signature signature(const Gram& g, double tol = kLinearTol);

SubspaceClass classify_subspace(const Gram& g, const Subspace& f, double tol = kLinearTol);

Subspace orthogonal_complement(const Gram& g, const Subspace& f, double tol = kLinearTol);

/// A unit (Euclidean) vector v in F with |<v,v>| <= tol*scale, or nullopt when
/// the restriction of g to F is definite. Deterministic.
std::optional<Vector> find_isotropic_in(const Gram& g, const Subspace& f, double tol = kLinearTol);

/// Singular values strictly greater than tol * (largest singular value).
int numerical_rank(const Matrix& m, double tol = kLinearTol);

/// Orthonormal basis (columns) of ker M, at relative tolerance tol.
Matrix nullspace(const Matrix& m, double tol = kLinearTol);

/// Orthonormal basis (columns) of the column space of M. Singular values up to
/// tol * max(sigma_max, reference) are dropped, so a reference scale lets a
/// matrix made only of rounding noise come out as rank zero.
Matrix column_space(const Matrix& m, double tol = kLinearTol, double reference = 0.0);

/// A g-orthonormal basis (columns of `basis`) with signs eps_i = <f_i,f_i> = +-1.
struct OrthonormalFrame {
  Matrix basis;
  Vector eps;
};

/// Built from the symmetric eigendecomposition of g; throws DegenerateGram if g is singular.
OrthonormalFrame orthonormal_frame(const Gram& g, double tol = kLinearTol);

}  // namespace mlie
