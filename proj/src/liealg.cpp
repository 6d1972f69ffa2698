#include "mlie/liealg.hpp"

#include <algorithm>
#include <Eigen/LU>

namespace mlie {

LieAlgebra::LieAlgebra(int n) : n_(n) {
  if (n < 0) throw InvalidInput("negative dimension");
  upper_.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, Vector::Zero(n));
}

std::size_t LieAlgebra::pair_index(int i, int j) const {
  // Row-major enumeration of the strict upper triangle.
  const auto ii = static_cast<std::size_t>(i);
  return ii * static_cast<std::size_t>(n_) - ii * (ii + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

LieAlgebra LieAlgebra::from_brackets(int n, const std::vector<BracketTerm>& terms) {
  LieAlgebra a(n);
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0 || t.i >= n || t.j >= n) throw InvalidInput("bracket index out of range");
    if (t.i == t.j) throw InvalidInput("bracket [e_i, e_i] must not be specified");
    if (t.value.size() != n) throw InvalidInput("bracket value has the wrong length");
    if (!t.value.allFinite()) throw InvalidInput("bracket value has non-finite entries");
    if (t.i < t.j) {
      a.upper_[a.pair_index(t.i, t.j)] += t.value;
    } else {
      a.upper_[a.pair_index(t.j, t.i)] -= t.value;
    }
  }
  return a;
}

LieAlgebra LieAlgebra::checked(int n, const std::vector<BracketTerm>& terms, double tol) {
  LieAlgebra a = from_brackets(n, terms);
  const double c = a.max_constant();
  const double defect = jacobi_defect(a);
  if (defect > tol * scale_of({c * c})) {
    throw InvalidInput("brackets violate the Jacobi identity (defect " + std::to_string(defect) + ")");
  }
  return a;
}

Vector LieAlgebra::structure(int i, int j) const {
  if (i == j) return Vector::Zero(n_);
  if (i < j) return upper_[pair_index(i, j)];
  return -upper_[pair_index(j, i)];
}

double LieAlgebra::structure(int i, int j, int k) const {
  if (i == j) return 0.0;
  if (i < j) return upper_[pair_index(i, j)](k);
  return -upper_[pair_index(j, i)](k);
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  Vector out = Vector::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const double w = u(i) * v(j) - u(j) * v(i);
      if (w != 0.0) out += w * upper_[pair_index(i, j)];
    }
  }
  return out;
}

double LieAlgebra::max_constant() const {
  double m = 0.0;
  for (const auto& v : upper_) m = std::max(m, max_abs(v));
  return m;
}

LieAlgebra LieAlgebra::in_basis(const Matrix& p) const {
  if (p.rows() != n_ || p.cols() != n_) throw InvalidInput("basis change has the wrong shape");
  Eigen::PartialPivLU<Matrix> lu(p);
  LieAlgebra out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      out.upper_[out.pair_index(i, j)] = lu.solve(bracket(p.col(i), p.col(j)));
    }
  }
  return out;
}

std::vector<BracketTerm> LieAlgebra::brackets() const {
  std::vector<BracketTerm> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const Vector& v = upper_[pair_index(i, j)];
      if (max_abs(v) != 0.0) out.push_back({i, j, v});
    }
  }
  return out;
}

bool LieAlgebra::operator==(const LieAlgebra& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t k = 0; k < upper_.size(); ++k) {
    if (upper_[k] != other.upper_[k]) return false;
  }
  return true;
}

double jacobi_defect(const LieAlgebra& a) {
  const int n = a.dim();
  const Matrix id = Matrix::Identity(n, n);
  double worst = 0.0;
  // The Jacobiator is alternating, so increasing triples cover every case.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Vector s = a.bracket(id.col(i), a.structure(j, k)) + a.bracket(id.col(k), a.structure(i, j)) +
                         a.bracket(id.col(j), a.structure(k, i));
        worst = std::max(worst, max_abs(s));
      }
    }
  }
  return worst;
}

Matrix ad(const LieAlgebra& a, const Vector& u) {
  const int n = a.dim();
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    Vector col = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (u(i) != 0.0) col += u(i) * a.structure(i, j);
    }
    m.col(j) = col;
  }
  return m;
}

std::vector<Matrix> ad_basis(const LieAlgebra& a) {
  std::vector<Matrix> out;
  const Matrix id = Matrix::Identity(a.dim(), a.dim());
  out.reserve(a.dim());
  for (int i = 0; i < a.dim(); ++i) out.push_back(ad(a, id.col(i)));
  return out;
}

Subspace center(const LieAlgebra& a, double tol) {
  const int n = a.dim();
  Matrix stacked(static_cast<Index>(n) * n, n);
  const auto ads = ad_basis(a);
  for (int i = 0; i < n; ++i) stacked.middleRows(static_cast<Index>(i) * n, n) = ads[i];
  return Subspace(n, nullspace(stacked, tol));
}

Subspace derived_ideal(const LieAlgebra& a, double tol) {
  const int n = a.dim();
  Matrix cols(n, static_cast<Index>(n) * (n > 0 ? n - 1 : 0) / 2);
  Index k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) cols.col(k++) = a.structure(i, j);
  }
  return Subspace::span_of(cols, tol);
}

std::vector<Subspace> lower_central_series(const LieAlgebra& a, double tol) {
  const int n = a.dim();
  const auto ads = ad_basis(a);
  double reference = 0.0;
  for (const Matrix& ad : ads) reference = std::max(reference, ad.cwiseAbs().maxCoeff());
  std::vector<Subspace> series{Subspace::whole(n)};
  while (series.back().dim() > 0) {
    const Matrix& current = series.back().basis();
    Matrix spanning(n, static_cast<Index>(n) * current.cols());
    for (int i = 0; i < n; ++i) spanning.middleCols(static_cast<Index>(i) * current.cols(), current.cols()) = ads[i] * current;
    Subspace next = Subspace::span_of(spanning, tol, reference);
    if (next.dim() >= series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_nilpotent(const LieAlgebra& a, double tol) { return lower_central_series(a, tol).back().dim() == 0; }

namespace {

// Linear system in vec(D) (column-major, D(r,c) at r + n*c) whose kernel is Der(a).
Matrix derivation_system(const LieAlgebra& a) {
  const int n = a.dim();
  const Index pairs = static_cast<Index>(n) * (n > 0 ? n - 1 : 0) / 2;
  Matrix sys = Matrix::Zero(pairs * n, static_cast<Index>(n) * n);
  auto var = [n](int r, int c) { return static_cast<Index>(r) + static_cast<Index>(n) * c; };
  Index row0 = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, row0 += n) {
      const Vector cij = a.structure(i, j);
      for (int k = 0; k < n; ++k) {
        const Index row = row0 + k;
        for (int r = 0; r < n; ++r) {
          sys(row, var(k, r)) += cij(r);
          sys(row, var(r, i)) -= a.structure(r, j, k);
          sys(row, var(r, j)) -= a.structure(i, r, k);
        }
      }
    }
  }
  return sys;
}

Matrix unvec(const Vector& v, int n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

}  // namespace

std::vector<Derivation> derivation_space(const LieAlgebra& a, double tol) {
  const int n = a.dim();
  const Matrix kernel = nullspace(derivation_system(a), tol);
  const Index d = kernel.cols();
  std::vector<Derivation> out;
  if (d == 0) return out;

  // Greedy pivots in coordinate order (reduced row echelon form of the kernel
  // transpose): a kernel row becomes a pivot when it is independent of the
  // rows already chosen.
  Matrix chosen(d, 0);
  std::vector<Index> pivots;
  for (Index r = 0; r < kernel.rows() && static_cast<Index>(pivots.size()) < d; ++r) {
    Vector row = kernel.row(r).transpose();
    if (chosen.cols() > 0) row -= chosen * (chosen.transpose() * row);
    const double norm = row.norm();
    if (norm > 1e-6) {
      chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
      chosen.col(chosen.cols() - 1) = row / norm;
      pivots.push_back(r);
    }
  }
  Matrix pivot_block(d, d);
  for (Index k = 0; k < d; ++k) pivot_block.row(k) = kernel.row(pivots[static_cast<std::size_t>(k)]);
  Matrix reduced = kernel * pivot_block.inverse();
  // Clear roundoff so exact zeros and unit pivots print cleanly.
  const double cut = tol * scale_of({max_abs(reduced)});
  reduced = reduced.unaryExpr([cut](double x) { return std::abs(x) <= cut ? 0.0 : x; });
  for (Index k = 0; k < d; ++k) {
    for (Index j = 0; j < d; ++j) reduced(pivots[static_cast<std::size_t>(j)], k) = j == k ? 1.0 : 0.0;
  }

  out.reserve(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) out.push_back({unvec(reduced.col(k), n)});
  return out;
}

double derivation_defect(const LieAlgebra& a, const Matrix& e) {
  const int n = a.dim();
  if (e.rows() != n || e.cols() != n) throw InvalidInput("endomorphism has the wrong shape");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector r = e * a.structure(i, j) - a.bracket(e.col(i), Vector::Unit(n, j)) -
                       a.bracket(Vector::Unit(n, i), e.col(j));
      worst = std::max(worst, max_abs(r));
    }
  }
  return worst;
}

std::optional<Derivation> find_nonzero_trace_derivation(const LieAlgebra& a, double tol) {
  if (a.dim() > 0 && a.is_abelian()) return Derivation{Matrix::Identity(a.dim(), a.dim())};
  // Trace is linear, so it vanishes on Der(a) iff it vanishes on a basis.
  for (auto& d : derivation_space(a, tol)) {
    if (std::abs(d.trace()) > tol * scale_of({max_abs(d.matrix)})) return std::move(d);
  }
  return std::nullopt;
}

}  // namespace mlie
