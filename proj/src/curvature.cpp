#include "mlie/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace mlie {

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra algebra, Gram gram, double tol)
    : algebra_(std::move(algebra)), gram_(std::move(gram)) {
  const int n = algebra_.dim();
  if (gram_.dim() != n) throw InvalidInput("Gram matrix and algebra have different dimensions");
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram_.matrix(), Eigen::EigenvaluesOnly);
    const Vector ev = es.eigenvalues().cwiseAbs();
    if (ev.minCoeff() <= tol * scale_of({ev.maxCoeff()})) throw DegenerateGram("Gram matrix is degenerate");
  }
  gram_inv_ = gram_.matrix().inverse();
  gram_inv_ = Matrix((gram_inv_ + gram_inv_.transpose()) * 0.5);
  ads_ = ad_basis(algebra_);

  // S_i = -G^{-1} C_i with C_i(a, b) = c_ab^i.
  endos_.assign(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    Matrix c(n, n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) c(a, b) = algebra_.structure(a, b, i);
    }
    endos_[static_cast<std::size_t>(i)] = -gram_inv_ * c;
  }

  const double cmax = algebra_.max_constant();
  scale_ = scale_of({cmax * cmax * max_abs(gram_.matrix()) * max_abs(gram_inv_)});
}

MetricLieAlgebra MetricLieAlgebra::in_basis(const Matrix& p) const {
  return MetricLieAlgebra(algebra_.in_basis(p), gram_.congruent(p));
}

double StructureEndos::skewness_defect(const Gram& g) const {
  double worst = 0.0;
  for (const auto& si : s) worst = std::max(worst, max_abs(Matrix(g.matrix() * si + si.transpose() * g.matrix())));
  return worst;
}

double StructureEndos::reconstruction_defect(const MetricLieAlgebra& m) const {
  const int n = m.dim();
  const Matrix& g = m.gram().matrix();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Vector r = -m.algebra().structure(a, b);
      for (int i = 0; i < n; ++i) r(i) += s[static_cast<std::size_t>(i)].col(a).dot(g.col(b));
      worst = std::max(worst, max_abs(r));
    }
  }
  return worst;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Vector levi_civita(const MetricLieAlgebra& m, const Vector& u, const Vector& v) {
  const Matrix& g = m.gram().matrix();
  const LieAlgebra& a = m.algebra();
  // Koszul: 2<u.v, x> = <[u,v], x> - <[u,x], v> - <[v,x], u>. The last two
  // terms are linear in x; their coefficient vectors are (ad_u)^T G v and (ad_v)^T G u.
  const Vector rhs = g * a.bracket(u, v) - ad(a, u).transpose() * (g * v) - ad(a, v).transpose() * (g * u);
  return 0.5 * (m.gram_inverse() * rhs);
}

Matrix left_multiplication(const MetricLieAlgebra& m, const Vector& u) {
  const Matrix adu = ad(m.algebra(), u);
  return 0.5 * (adu - m.adjoint(adu) - j_map(m, u));
}

double left_mult_skewness_defect(const MetricLieAlgebra& m, const Vector& u) {
  const Matrix l = left_multiplication(m, u);
  const Matrix& g = m.gram().matrix();
  return max_abs(Matrix(g * l + l.transpose() * g));
}

namespace {

std::vector<Matrix> left_basis(const MetricLieAlgebra& m) {
  const int n = m.dim();
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Matrix& adi = m.ad_matrices()[static_cast<std::size_t>(i)];
    out.push_back(0.5 * (adi - m.adjoint(adi) - j_map(m, Vector::Unit(n, i))));
  }
  return out;
}

// R_u = -(ad_u + ad_u^*)/2 - J_u/2, linear in u.
Matrix right_multiplication(const MetricLieAlgebra& m, const Vector& u) {
  const Matrix adu = ad(m.algebra(), u);
  return -0.5 * (adu + m.adjoint(adu)) - 0.5 * j_map(m, u);
}

Matrix symmetrized(const Matrix& x) { return (x + x.transpose()) * 0.5; }

}  // namespace

CurvatureTensor curvature_tensor(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const auto ls = left_basis(m);
  CurvatureTensor k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector cij = m.algebra().structure(i, j);
      Matrix kij = -(ls[static_cast<std::size_t>(i)] * ls[static_cast<std::size_t>(j)] -
                     ls[static_cast<std::size_t>(j)] * ls[static_cast<std::size_t>(i)]);
      for (int r = 0; r < n; ++r) {
        if (cij(r) != 0.0) kij += cij(r) * ls[static_cast<std::size_t>(r)];
      }
      for (int c = 0; c < n; ++c) {
        for (int l = 0; l < n; ++l) k(i, j, c, l) = kij(l, c);
      }
    }
  }
  return k;
}

Matrix ricci_via_definition(const MetricLieAlgebra& m) {
  const int n = m.dim();
  std::vector<Matrix> rs;
  rs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rs.push_back(right_multiplication(m, Vector::Unit(n, i)));
  Matrix ric(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector prod = levi_civita(m, Vector::Unit(n, i), Vector::Unit(n, j));
      ric(i, j) = -(rs[static_cast<std::size_t>(i)] * rs[static_cast<std::size_t>(j)]).trace() +
                  right_multiplication(m, prod).trace();
    }
  }
  return symmetrized(ric);
}

StructureEndos structure_endos(const MetricLieAlgebra& m) { return {m.structure_endomorphisms()}; }

Matrix j_map(const MetricLieAlgebra& m, const Vector& u) {
  const int n = m.dim();
  const Vector w = m.gram().matrix() * u;
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (w(i) != 0.0) j += w(i) * m.structure_endomorphisms()[static_cast<std::size_t>(i)];
  }
  return j;
}

Vector mean_vector(const MetricLieAlgebra& m) {
  const int n = m.dim();
  Vector t(n);
  for (int i = 0; i < n; ++i) t(i) = m.ad_matrices()[static_cast<std::size_t>(i)].trace();
  return m.gram_inverse() * t;
}

J1J2 j1_j2(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const auto& s = m.structure_endomorphisms();
  const Matrix& g = m.gram().matrix();
  J1J2 out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  Matrix t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Matrix sij = s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
      if (g(i, j) != 0.0) out.j1 -= g(i, j) * sij;
      t(i, j) = sij.trace();
    }
  }
  // (J2)_{jk} = -sum_i g_ik tr(S_i S_j).
  out.j2 = -symmetrized(t) * g;
  return out;
}

Matrix ricci_nilpotent(const MetricLieAlgebra& m, double tol) {
  if (!is_nilpotent(m.algebra(), tol)) throw NotNilpotent("algebra is not nilpotent");
  const J1J2 j = j1_j2(m);
  return -0.5 * j.j1 + 0.25 * j.j2;
}

Matrix ricci_general(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const auto& ads = m.ad_matrices();
  const Matrix& g = m.gram().matrix();
  std::vector<Matrix> adj;
  std::vector<Matrix> js;
  adj.reserve(static_cast<std::size_t>(n));
  js.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    adj.push_back(m.adjoint(ads[static_cast<std::size_t>(i)]));
    js.push_back(j_map(m, Vector::Unit(n, i)));
  }
  const Matrix ad_h = ad(m.algebra(), mean_vector(m));
  const Matrix h_term = g * ad_h;  // (i, j) -> <e_i, ad_H e_j>
  Matrix ric(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      ric(i, j) = -0.5 * (ads[ui] * ads[uj]).trace() - 0.5 * (ads[ui] * adj[uj]).trace() -
                  0.25 * (js[ui] * js[uj]).trace() - 0.5 * h_term(j, i) - 0.5 * h_term(i, j);
    }
  }
  return symmetrized(ric);
}

Matrix ricci_operator(const MetricLieAlgebra& m, const Matrix& ricci_form) { return m.gram_inverse() * ricci_form; }

Matrix killing_form(const MetricLieAlgebra& m) {
  const int n = m.dim();
  const auto& ads = m.ad_matrices();
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = (ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)]).trace();
  }
  return symmetrized(b);
}

TracePair trace_q_times(const MetricLieAlgebra& m, const Matrix& e) {
  const int n = m.dim();
  if (e.rows() != n || e.cols() != n) throw InvalidInput("endomorphism has the wrong shape");
  const J1J2 j = j1_j2(m);
  TracePair out;
  out.lhs = ((-0.5 * j.j1 + 0.25 * j.j2) * e).trace();

  const OrthonormalFrame frame = orthonormal_frame(m.gram());
  const LieAlgebra& a = m.algebra();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const Vector fi = frame.basis.col(i);
      const Vector fk = frame.basis.col(k);
      const Vector b = a.bracket(fi, fk);
      const Vector defect = e * b - a.bracket(e * fi, fk) - a.bracket(fi, e * fk);
      sum += frame.eps(i) * frame.eps(k) * m.inner(defect, b);
    }
  }
  out.rhs = 0.25 * sum;
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Einstein: return "Einstein";
    case Verdict::RicciFlat: return "RicciFlat";
    case Verdict::Flat: return "Flat";
    case Verdict::NotEinstein: return "NotEinstein";
  }
  return "?";
}

CurvatureReport einstein_classify(const MetricLieAlgebra& m, double tol, double linear_tol) {
  const int n = m.dim();
  CurvatureReport r;
  r.scale = m.scale();
  r.nilpotent = is_nilpotent(m.algebra(), linear_tol);

  const Matrix def_form = ricci_via_definition(m);
  const Matrix gen_form = ricci_general(m);
  r.route_residual = max_abs(Matrix(def_form - gen_form));
  if (r.nilpotent) {
    r.ricci = ricci_nilpotent(m, linear_tol);
    r.ricci_form = symmetrized(m.gram().matrix() * r.ricci);
    r.route_residual = std::max(r.route_residual, max_abs(Matrix(r.ricci - ricci_operator(m, def_form))));
  } else {
    r.ricci_form = def_form;
    r.ricci = ricci_operator(m, def_form);
  }

  r.scalar = r.ricci.trace();
  r.lambda_estimate = n > 0 ? r.scalar / n : 0.0;
  r.einstein_residual = max_abs(Matrix(r.ricci - r.lambda_estimate * Matrix::Identity(n, n)));
  r.curvature_max = curvature_tensor(m).max_abs();

  const double cut = tol * r.scale;
  r.flat = r.curvature_max <= cut;
  if (r.einstein_residual > cut) {
    r.verdict = Verdict::NotEinstein;
  } else if (std::abs(r.lambda_estimate) > cut) {
    r.verdict = Verdict::Einstein;
    r.einstein_lambda = r.lambda_estimate;
  } else {
    r.verdict = r.flat ? Verdict::Flat : Verdict::RicciFlat;
    r.einstein_lambda = 0.0;
  }
  return r;
}

}  // namespace mlie
