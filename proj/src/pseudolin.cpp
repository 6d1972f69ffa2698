#include "mlie/pseudolin.hpp"

#include <algorithm>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mlie {

namespace {

Signature count_signs(const Vector& eigenvalues, double tol, double scale) {
  Signature s;
  const double cut = tol * scale;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l < -cut) {
      ++s.minus;
    } else if (l > cut) {
      ++s.plus;
    } else {
      ++s.null;
    }
  }
  return s;
}

double eigen_scale(const Vector& eigenvalues) {
  return scale_of({max_abs(eigenvalues)});
}

Vector symmetric_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// Flip v so that its largest-magnitude entry (first on ties) is positive.
void canonical_sign(Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  }
  if (v.size() > 0 && v(best) < 0) v = -v;
}

}  // namespace

Gram::Gram(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("Gram matrix must be square");
  if (!m.allFinite()) throw InvalidInput("Gram matrix has non-finite entries");
  m_ = (m + m.transpose()) * 0.5;
}

Gram Gram::identity(Index n) { return Gram(Matrix::Identity(n, n)); }

Gram Gram::diagonal(const Vector& d) { return Gram(Matrix(d.asDiagonal())); }

std::ostream& operator<<(std::ostream& os, const Signature& s) {
  os << "(" << s.minus << "," << s.plus;
  if (s.null != 0) os << "," << s.null << " null";
  return os << ")";
}

Subspace::Subspace(Index ambient_dim, const Matrix& vectors) : ambient_(ambient_dim) {
  if (vectors.cols() > 0 && vectors.rows() != ambient_dim) {
    throw InvalidInput("subspace vectors have the wrong length");
  }
  if (!vectors.allFinite()) throw InvalidInput("subspace vectors have non-finite entries");
  if (numerical_rank(vectors) != vectors.cols()) {
    throw InvalidInput("subspace spanning list is not linearly independent");
  }
  basis_ = vectors.cols() > 0 ? vectors : Matrix(ambient_dim, 0);
}

Subspace Subspace::span_of(const Matrix& spanning, double tol, double reference) {
  return Subspace(spanning.rows(), column_space(spanning, tol, reference));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::whole(Index ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Matrix Subspace::orthonormal_basis() const {
  if (dim() == 0) return Matrix(ambient_, 0);
  Eigen::HouseholderQR<Matrix> qr(basis_);
  return qr.householderQ() * Matrix::Identity(ambient_, dim());
}

double Subspace::distance(const Vector& v) const {
  const Matrix q = orthonormal_basis();
  const Vector r = v - q * (q.transpose() * v);
  return r.norm() / std::max(1.0, v.norm());
}

double Subspace::inclusion_residual(const Subspace& other) const {
  double worst = 0.0;
  for (Index k = 0; k < other.dim(); ++k) worst = std::max(worst, distance(other.basis().col(k)));
  return worst;
}

std::string_view to_string(SubspaceTag tag) {
  switch (tag) {
    case SubspaceTag::EuclideanNondegenerate: return "EuclideanNondegenerate";
    case SubspaceTag::LorentzianNondegenerate: return "LorentzianNondegenerate";
    case SubspaceTag::IndefiniteNondegenerate: return "IndefiniteNondegenerate";
    case SubspaceTag::Degenerate: return "Degenerate";
  }
  return "?";
}

Signature signature(const Gram& g, double tol) {
  const Vector ev = symmetric_eigenvalues(g.matrix());
  return count_signs(ev, tol, eigen_scale(ev));
}

SubspaceClass classify_subspace(const Gram& g, const Subspace& f, double tol) {
  if (f.ambient_dim() != g.dim()) throw InvalidInput("subspace and Gram dimensions differ");
  const double scale = eigen_scale(symmetric_eigenvalues(g.matrix()));
  const Matrix q = f.orthonormal_basis();
  const Matrix restricted = q.transpose() * g.matrix() * q;
  SubspaceClass out;
  out.restricted = count_signs(symmetric_eigenvalues((restricted + restricted.transpose()) * 0.5), tol, scale);
  out.null_dim = out.restricted.null;
  if (out.restricted.null > 0) {
    out.tag = SubspaceTag::Degenerate;
  } else if (out.restricted.minus == 0) {
    out.tag = SubspaceTag::EuclideanNondegenerate;
  } else if (out.restricted.minus == 1) {
    out.tag = SubspaceTag::LorentzianNondegenerate;
  } else {
    out.tag = SubspaceTag::IndefiniteNondegenerate;
  }
  return out;
}

Subspace orthogonal_complement(const Gram& g, const Subspace& f, double tol) {
  if (f.ambient_dim() != g.dim()) throw InvalidInput("subspace and Gram dimensions differ");
  if (f.dim() == 0) return Subspace::whole(g.dim());
  const Matrix constraints = f.orthonormal_basis().transpose() * g.matrix();
  return Subspace(g.dim(), nullspace(constraints, tol));
}

std::optional<Vector> find_isotropic_in(const Gram& g, const Subspace& f, double tol) {
  if (f.ambient_dim() != g.dim()) throw InvalidInput("subspace and Gram dimensions differ");
  if (f.dim() == 0) return std::nullopt;
  const double scale = eigen_scale(symmetric_eigenvalues(g.matrix()));
  const Matrix q = f.orthonormal_basis();
  const Matrix restricted = q.transpose() * g.matrix() * q;
  Eigen::SelfAdjointEigenSolver<Matrix> es((restricted + restricted.transpose()) * 0.5);
  const Vector& ev = es.eigenvalues();
  const Matrix& u = es.eigenvectors();

  Vector local;
  Index smallest = 0;
  for (Index k = 1; k < ev.size(); ++k) {
    if (std::abs(ev(k)) < std::abs(ev(smallest))) smallest = k;
  }
  if (std::abs(ev(smallest)) <= tol * scale) {
    local = u.col(smallest);
  } else if (ev(0) < 0.0 && ev(ev.size() - 1) > 0.0) {
    // Eigenvalues are ascending: mix the most negative and most positive directions.
    const Index top = ev.size() - 1;
    local = u.col(0) / std::sqrt(-ev(0)) + u.col(top) / std::sqrt(ev(top));
  } else {
    return std::nullopt;
  }
  Vector v = q * local;
  v.normalize();
  canonical_sign(v);
  return v;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * top) ++rank;
  }
  return rank;
}

Matrix nullspace(const Matrix& m, double tol) {
  const Index cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double top = sv(0);
  Index rank = 0;
  if (top > 0.0) {
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > tol * top) ++rank;
    }
  }
  return svd.matrixV().rightCols(cols - rank);
}

Matrix column_space(const Matrix& m, double tol, double reference) {
  const Index rows = m.rows();
  if (m.cols() == 0 || rows == 0) return Matrix(rows, 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double cut = tol * std::max(sv(0), reference);
  Index rank = 0;
  if (sv(0) > 0.0) {
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut) ++rank;
    }
  }
  return svd.matrixU().leftCols(rank);
}

OrthonormalFrame orthonormal_frame(const Gram& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.matrix());
  const Vector& ev = es.eigenvalues();
  const double scale = eigen_scale(ev);
  OrthonormalFrame frame;
  frame.basis.resize(g.dim(), g.dim());
  frame.eps.resize(g.dim());
  for (Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= tol * scale) throw DegenerateGram("Gram matrix is degenerate");
    frame.basis.col(k) = es.eigenvectors().col(k) / std::sqrt(std::abs(ev(k)));
    frame.eps(k) = ev(k) < 0.0 ? -1.0 : 1.0;
  }
  return frame;
}

}  // namespace mlie
