#include "mlie/doubleext.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

namespace mlie {

ExtensionData::ExtensionData(Matrix k_in, Matrix d_in, double mu_in, Vector b_in)
    : d(std::move(d_in)), mu(mu_in), b(std::move(b_in)) {
  const Index v = d.rows();
  if (d.cols() != v || k_in.rows() != v || k_in.cols() != v || b.size() != v) {
    throw InvalidInput("extension data blocks have inconsistent shapes");
  }
  if (!k_in.allFinite() || !d.allFinite() || !b.allFinite() || !std::isfinite(mu)) {
    throw InvalidInput("extension data has non-finite entries");
  }
  k = (k_in - k_in.transpose()) * 0.5;
}

double ExtensionData::scale() const {
  const double m = std::max({max_abs(k), max_abs(d), max_abs(b), std::abs(mu)});
  return scale_of({m * m});
}

Admissibility check_admissible(const ExtensionData& d, double tol) {
  Admissibility out;
  const int v = d.v_dim();
  const double s = d.scale() * std::max(1, v);
  out.lie_residual = max_abs(Matrix(d.k * d.d + d.d.transpose() * d.k - d.mu * d.k));
  out.trace_residual = std::abs(4.0 * d.mu * d.d.trace() - (d.k * d.k).trace() - 2.0 * (d.d * d.d).trace() -
                                2.0 * (d.d * d.d.transpose()).trace());
  out.is_lie = out.lie_residual <= tol * s;
  if (out.is_lie && std::abs(d.mu) <= tol) {
    Matrix power = Matrix::Identity(v, v);
    for (int i = 0; i < v; ++i) power = power * d.d;
    const double dmax = std::max(1.0, max_abs(d.d));
    out.is_nilpotent = max_abs(power) <= tol * std::pow(dmax, v);
  }
  out.is_einstein = out.is_lie && out.trace_residual <= tol * s;
  return out;
}

MetricLieAlgebra extend(const ExtensionData& d, double tol) {
  if (!check_admissible(d, tol).is_lie) throw NotLie("extension data violates K D + D^T K = mu K");
  const int v = d.v_dim();
  const int n = v + 2;
  const int ebar = v + 1;
  std::vector<BracketTerm> terms;
  auto unit = [n](int i, double x) {
    Vector w = Vector::Zero(n);
    w(i) = x;
    return w;
  };
  if (d.mu != 0.0) terms.push_back({0, ebar, unit(0, -d.mu)});
  for (int a = 0; a < v; ++a) {
    // [f_a, ebar] = -(D f_a) - b_a e.
    Vector w = Vector::Zero(n);
    w(0) = -d.b(a);
    w.segment(1, v) = -d.d.col(a);
    if (max_abs(w) != 0.0) terms.push_back({a + 1, ebar, w});
    for (int c = a + 1; c < v; ++c) {
      if (d.k(c, a) != 0.0) terms.push_back({a + 1, c + 1, unit(0, d.k(c, a))});
    }
  }
  Matrix g = Matrix::Zero(n, n);
  g(0, ebar) = g(ebar, 0) = 1.0;
  g.block(1, 1, v, v).setIdentity();
  return MetricLieAlgebra(LieAlgebra::from_brackets(n, terms), Gram(g));
}

double ricci_ebar(const ExtensionData& d, double tol) {
  if (!check_admissible(d, tol).is_lie) throw NotLie("extension data violates K D + D^T K = mu K");
  return -0.5 * (d.d * d.d).trace() - 0.5 * (d.d * d.d.transpose()).trace() - 0.25 * (d.k * d.k).trace() +
         d.mu * d.d.trace();
}

std::optional<Decomposition> decompose(const MetricLieAlgebra& m, double tol, double verdict_tol) {
  const int n = m.dim();
  if (n < 2) throw NotApplicable("dimension too small for a double extension");
  if (!signature(m.gram(), tol).is_lorentzian()) throw NotApplicable("metric is not Lorentzian");
  if (!is_nilpotent(m.algebra(), tol)) throw NotApplicable("algebra is not nilpotent");
  const auto report = einstein_classify(m, verdict_tol, tol);
  if (report.verdict != Verdict::RicciFlat && report.verdict != Verdict::Flat) {
    throw NotApplicable("metric is not Ricci-flat");
  }

  const Gram& gram = m.gram();
  const Matrix& g = gram.matrix();
  const auto iso = find_isotropic_in(gram, center(m.algebra(), tol), tol);
  if (!iso) return std::nullopt;
  const Vector e = *iso;
  const Vector ge = g * e;
  const Vector x = ge / ge.squaredNorm();
  const Vector ebar = x - 0.5 * gram.inner(x, x) * e;

  // g-orthonormal basis of {e, ebar}^perp; the restriction is positive definite.
  Matrix pair(n, 2);
  pair << e, ebar;
  const Matrix comp = orthogonal_complement(gram, Subspace(n, pair), tol).basis();
  const Matrix restricted = comp.transpose() * g * comp;
  Eigen::LLT<Matrix> llt((restricted + restricted.transpose()) * 0.5);
  if (llt.info() != Eigen::Success) throw NotApplicable("complement of the isotropic pair is not Euclidean");
  const Matrix f = llt.matrixU().solve<Eigen::OnTheRight>(comp);

  const int v = n - 2;
  Matrix p(n, n);
  p.col(0) = e;
  p.middleCols(1, v) = f;
  p.col(n - 1) = ebar;
  const LieAlgebra local = m.algebra().in_basis(p);

  Matrix k(v, v);
  Matrix dm(v, v);
  Vector b(v);
  for (int a = 0; a < v; ++a) {
    const Vector w = local.structure(a + 1, n - 1);
    b(a) = -w(0);
    dm.col(a) = -w.segment(1, v);
    for (int c = 0; c < v; ++c) k(c, a) = local.structure(a + 1, c + 1, 0);
  }

  Decomposition out;
  out.data = ExtensionData(k, dm, 0.0, b);
  out.basis_change = p;
  // A residual K D + D^T K slightly above tolerance is reported through
  // model_residual rather than rejected.
  const ExtensionData& data = out.data;
  Matrix model_g = Matrix::Zero(n, n);
  model_g(0, n - 1) = model_g(n - 1, 0) = 1.0;
  model_g.block(1, 1, v, v).setIdentity();
  double residual = max_abs(Matrix(gram.congruent(p).matrix() - model_g));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Vector model = Vector::Zero(n);
      if (j == n - 1) {
        if (i == 0) {
          model(0) = -data.mu;
        } else {
          model(0) = -data.b(i - 1);
          model.segment(1, v) = -data.d.col(i - 1);
        }
      } else if (i > 0) {
        model(0) = data.k(j - 1, i - 1);
      }
      residual = std::max(residual, max_abs(Vector(local.structure(i, j) - model)));
    }
  }
  out.model_residual = residual;
  return out;
}

KDPair kd_generate(int f_dim, int fperp_dim, const Matrix& d1, const Matrix& d2, const Matrix& k0, const Matrix& s,
                   double tol) {
  if (f_dim < 0 || fperp_dim < 0) throw InvalidInput("block dimensions must be non-negative");
  if (d1.rows() != f_dim || d1.cols() != f_dim) throw InvalidInput("D1 must be f_dim x f_dim");
  if (d2.rows() != f_dim || d2.cols() != fperp_dim) throw InvalidInput("D2 must be f_dim x fperp_dim");
  if (k0.rows() != fperp_dim || k0.cols() != fperp_dim) throw InvalidInput("K0 must be fperp_dim x fperp_dim");
  if (s.rows() != fperp_dim || s.cols() != fperp_dim) throw InvalidInput("S must be fperp_dim x fperp_dim");
  const double ks = scale_of({max_abs(k0)});
  if (max_abs(Matrix(k0 + k0.transpose())) > tol * ks) throw InvalidInput("K0 must be skew-symmetric");
  if (max_abs(Matrix(s - s.transpose())) > tol * scale_of({max_abs(s)})) throw InvalidInput("S must be symmetric");

  const int v = f_dim + fperp_dim;
  KDPair out{Matrix::Zero(v, v), Matrix::Zero(v, v)};
  out.d.topLeftCorner(f_dim, f_dim) = d1;
  out.d.topRightCorner(f_dim, fperp_dim) = d2;
  if (fperp_dim > 0) {
    const Matrix k0s = (k0 - k0.transpose()) * 0.5;
    Eigen::JacobiSVD<Matrix> svd(k0s);
    const Vector& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= tol * ks) throw SingularK0("K0 is not invertible");
    out.d.bottomRightCorner(fperp_dim, fperp_dim) = k0s.partialPivLu().solve((s + s.transpose()) * 0.5);
    out.k.bottomRightCorner(fperp_dim, fperp_dim) = k0s;
  }
  return out;
}

MetricLieAlgebra two_step_extension(int p, int q, const Vector& alpha, const Matrix& c, const Matrix& a, int abelian_dim,
                               double tol) {
  if (p < 0 || q < 0 || abelian_dim < 0) throw InvalidInput("dimensions must be non-negative");
  if (alpha.size() != q) throw InvalidInput("alpha must have length q");
  if (c.rows() != q || c.cols() != p) throw InvalidInput("c must be q x p");
  if (a.rows() != q || a.cols() != q) throw InvalidInput("a must be q x q");
  const double as = scale_of({max_abs(a)});
  if (max_abs(Matrix(a + a.transpose())) > tol * as) throw InvalidInput("a must be skew-symmetric");
  const double lhs = a.squaredNorm();
  const double rhs = 2.0 * c.squaredNorm();
  if (std::abs(lhs - rhs) > tol * scale_of({lhs, rhs})) {
    throw ConstraintViolation("sum of a_ij^2 (" + std::to_string(lhs) + ") must equal twice the sum of c_ik^2 (" +
                              std::to_string(rhs) + ")");
  }

  const int n = 2 + p + q + abelian_dim;
  const int ebar = p + 1;
  auto e_index = [ebar](int i) { return ebar + 1 + i; };
  std::vector<BracketTerm> terms;
  for (int i = 0; i < q; ++i) {
    // [ebar, e_i] = alpha_i e + sum_k c_ik z_k.
    Vector w = Vector::Zero(n);
    w(0) = alpha(i);
    for (int k = 0; k < p; ++k) w(1 + k) = c(i, k);
    if (max_abs(w) != 0.0) terms.push_back({ebar, e_index(i), w});
    for (int j = i + 1; j < q; ++j) {
      const double aij = 0.5 * (a(i, j) - a(j, i));
      if (aij != 0.0) {
        Vector u = Vector::Zero(n);
        u(0) = aij;
        terms.push_back({e_index(i), e_index(j), u});
      }
    }
  }
  Matrix g = Matrix::Identity(n, n);
  g(0, 0) = g(ebar, ebar) = 0.0;
  g(0, ebar) = g(ebar, 0) = 1.0;
  return MetricLieAlgebra(LieAlgebra::from_brackets(n, terms), Gram(g));
}

namespace {

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix x(n, n);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ();
  // Sign fix so the distribution does not depend on the QR convention.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix x(rows, cols);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

// Block-diagonal skew K0 made of 2x2 rotation generators with angles away from zero.
Matrix random_k0(int fperp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign;
  Matrix k0 = Matrix::Zero(fperp, fperp);
  for (int i = 0; i + 1 < fperp; i += 2) {
    const double t = sign(rng) ? mag(rng) : -mag(rng);
    k0(i, i + 1) = -t;
    k0(i + 1, i) = t;
  }
  return k0;
}

int random_fperp(int v_dim, std::mt19937_64& rng) {
  if (v_dim < 2) return 0;
  std::uniform_int_distribution<int> pick(1, v_dim / 2);
  return 2 * pick(rng);
}

}  // namespace

ExtensionData random_admissible_nilpotent(int v_dim, std::mt19937_64& rng) {
  if (v_dim < 1) throw InvalidInput("v_dim must be positive");
  const int fperp = random_fperp(v_dim, rng);
  const int f = v_dim - fperp;
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  Matrix d1 = random_matrix(f, f, rng).triangularView<Eigen::StrictlyUpper>();
  const Matrix d2 = random_matrix(f, fperp, rng);
  const Matrix k0 = random_k0(fperp, rng);
  // S = sigma w w^T per 2x2 block, so K0^{-1} S squares to zero there.
  Matrix s = Matrix::Zero(fperp, fperp);
  for (int i = 0; i + 1 < fperp; i += 2) {
    const Vector w = random_matrix(2, 1, rng);
    const double sigma = u(rng);
    s.block(i, i, 2, 2) = sigma * (w * w.transpose());
  }
  s = Matrix((s + s.transpose()) * 0.5);
  KDPair kd = kd_generate(f, fperp, d1, d2, k0, s);

  const Matrix q = random_orthogonal(v_dim, rng);
  Matrix k = q.transpose() * kd.k * q;
  const Matrix d = q.transpose() * kd.d * q;
  const double need = 2.0 * (d * d).trace() + 2.0 * (d * d.transpose()).trace();
  const double have = -(k * k).trace();
  if (need <= 0.0 || have <= 0.0) {
    k.setZero();
  } else {
    k *= std::sqrt(need / have);
  }
  return ExtensionData(k, d, 0.0, random_matrix(v_dim, 1, rng));
}

ExtensionData random_lie_admissible(int v_dim, std::mt19937_64& rng) {
  if (v_dim < 1) throw InvalidInput("v_dim must be positive");
  const int fperp = random_fperp(v_dim, rng);
  const int f = v_dim - fperp;
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign;
  const double mu = sign(rng) ? mag(rng) : -mag(rng);

  const Matrix d1 = random_matrix(f, f, rng);
  const Matrix d2 = random_matrix(f, fperp, rng);
  const Matrix k0 = random_k0(fperp, rng);
  Matrix s = random_matrix(fperp, fperp, rng);
  s = Matrix((s + s.transpose()) * 0.5);
  KDPair kd = kd_generate(f, fperp, d1, d2, k0, s);
  // Shifting the F^perp block by mu/2 turns K D + D^T K = 0 into = mu K.
  kd.d.bottomRightCorner(fperp, fperp) += 0.5 * mu * Matrix::Identity(fperp, fperp);

  const Matrix q = random_orthogonal(v_dim, rng);
  return ExtensionData(q.transpose() * kd.k * q, q.transpose() * kd.d * q, mu, random_matrix(v_dim, 1, rng));
}

}  // namespace mlie
