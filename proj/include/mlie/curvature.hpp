#pragma once

// Levi-Civita product and curvature of a Lie algebra with a nondegenerate
// symmetric inner product (left-invariant metric at the algebra level).

#include "mlie/common.hpp"
#include "mlie/liealg.hpp"
#include "mlie/pseudolin.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace mlie {

/// A Lie algebra with a nondegenerate Gram matrix. Derived data (Gram inverse,
/// ad-matrices, structure endomorphisms) is computed at construction, so
/// instances are immutable and safe to share between threads.
class MetricLieAlgebra {
 public:
  /// Throws InvalidInput on a dimension mismatch and DegenerateGram when the
  /// smallest |eigenvalue| of the Gram matrix is at most tol * scale.
  MetricLieAlgebra(LieAlgebra algebra, Gram gram, double tol = kLinearTol);

  int dim() const { return algebra_.dim(); }
  const LieAlgebra& algebra() const { return algebra_; }
  const Gram& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inv_; }
  const std::vector<Matrix>& ad_matrices() const { return ads_; }
  const std::vector<Matrix>& structure_endomorphisms() const { return endos_; }

  double inner(const Vector& u, const Vector& v) const { return gram_.inner(u, v); }
  /// Adjoint with respect to the Gram matrix: G^{-1} M^T G.
  Matrix adjoint(const Matrix& m) const { return gram_inv_ * m.transpose() * gram_.matrix(); }

  /// Magnitude against which curvature residuals are judged:
  /// max(1, c_max^2 * |G|_max * |G^{-1}|_max). Ricci-type quantities are
  /// quadratic in the structure constants.
  double scale() const { return scale_; }

  /// Same algebra and metric written in the basis formed by the columns of P.
  MetricLieAlgebra in_basis(const Matrix& p) const;

 private:
  LieAlgebra algebra_;
  Gram gram_;
  Matrix gram_inv_;
  std::vector<Matrix> ads_;
  std::vector<Matrix> endos_;
  double scale_ = 1.0;
};

/// Skew maps S_i with [u, v] = sum_i <S_i u, v> e_i.
struct StructureEndos {
  std::vector<Matrix> s;

  /// max_i |G S_i + S_i^T G|_inf.
  double skewness_defect(const Gram& g) const;
  /// max over basis pairs of |sum_i <S_i e_a, e_b> e_i - [e_a, e_b]|_inf.
  double reconstruction_defect(const MetricLieAlgebra& m) const;
};

/// Full curvature tensor, value(i, j, k, l) = l-th coordinate of K(e_i, e_j) e_k.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  int dim() const { return n_; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  double max_abs() const;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }
  int n_;
  std::vector<double> data_;
};

/// u . v from the Koszul formula, solved against the Gram matrix.
Vector levi_civita(const MetricLieAlgebra& m, const Vector& u, const Vector& v);
/// Matrix of v -> u . v.
Matrix left_multiplication(const MetricLieAlgebra& m, const Vector& u);
/// |G L_u + L_u^T G|_inf (zero up to roundoff for every u).
double left_mult_skewness_defect(const MetricLieAlgebra& m, const Vector& u);

CurvatureTensor curvature_tensor(const MetricLieAlgebra& m);

/// Bilinear Ricci form from right multiplications: ric(u,v) = -tr(R_u R_v) + tr(R_{u.v}).
Matrix ricci_via_definition(const MetricLieAlgebra& m);

StructureEndos structure_endos(const MetricLieAlgebra& m);

/// J_u = sum_i <u, e_i> S_i, equivalently J_u(v) = ad_v^*(u).
Matrix j_map(const MetricLieAlgebra& m, const Vector& u);

/// H with <H, u> = tr(ad_u).
Vector mean_vector(const MetricLieAlgebra& m);

struct J1J2 {
  Matrix j1;
  Matrix j2;
};

/// J1 = -sum_ij <e_i,e_j> S_i S_j and J2 u = -sum_ij <e_i,u> tr(S_i S_j) e_j.
J1J2 j1_j2(const MetricLieAlgebra& m);

/// Ricci operator -J1/2 + J2/4; throws NotNilpotent for non-nilpotent algebras.
Matrix ricci_nilpotent(const MetricLieAlgebra& m, double tol = kLinearTol);

/// Bilinear Ricci form from ad, its adjoint, J and H.
Matrix ricci_general(const MetricLieAlgebra& m);

/// Operator form G^{-1} ric of a bilinear Ricci form.
Matrix ricci_operator(const MetricLieAlgebra& m, const Matrix& ricci_form);

/// B(u, v) = tr(ad_u ad_v).
Matrix killing_form(const MetricLieAlgebra& m);

struct TracePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = tr(Q E) with Q = -J1/2 + J2/4; rhs = 1/4 sum_ij eps_i eps_j
/// <E[e_i,e_j] - [E e_i, e_j] - [e_i, E e_j], [e_i, e_j]> over an internal
/// orthonormal basis. The two agree for every endomorphism E.
TracePair trace_q_times(const MetricLieAlgebra& m, const Matrix& e);

enum class Verdict { Einstein, RicciFlat, Flat, NotEinstein };

std::string_view to_string(Verdict v);

struct CurvatureReport {
  Matrix ricci;       // operator Ric in the working basis
  Matrix ricci_form;  // bilinear ric
  double scalar = 0.0;
  std::optional<double> einstein_lambda;
  Verdict verdict = Verdict::NotEinstein;
  bool flat = false;

  double lambda_estimate = 0.0;    // tr(Ric)/n
  double einstein_residual = 0.0;  // |Ric - lambda_estimate Id|_inf
  double curvature_max = 0.0;      // |K|_inf
  double route_residual = 0.0;     // disagreement between the two Ricci routes
  double scale = 1.0;
  bool nilpotent = false;
};

/// Einstein verdict at relative tolerance tol (against MetricLieAlgebra::scale()).
CurvatureReport einstein_classify(const MetricLieAlgebra& m, double tol = kVerdictTol,
                                  double linear_tol = kLinearTol);

}  // namespace mlie
