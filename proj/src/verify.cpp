#include "mlie/verify.hpp"

#include "mlie/catalog.hpp"
#include "mlie/curvature.hpp"
#include "mlie/doubleext.hpp"
#include "mlie/search.hpp"

#include <Eigen/QR>

#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace mlie {

namespace {

struct Tolerances {
  double verdict = kVerdictTol;
  double linear = kLinearTol;
};

constexpr double kDerivationBound = 1e-12;
constexpr double kSeparation = 1e-6;

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

std::string fmt_fixed(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::mt19937_64 rng_for(std::uint64_t seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

// Collects the worst case of a family of bounded quantities into one row.
class Worst {
 public:
  void bound(double value, double threshold) {
    ++count_;
    if (!(value <= threshold)) ++failures_;
    // Track the instance closest to (or furthest past) its bound.
    const double ratio = threshold > 0.0 ? value / threshold : value;
    if (count_ == 1 || ratio > ratio_) {
      ratio_ = ratio;
      value_ = value;
      threshold_ = threshold;
    }
  }
  void flag(bool ok) {
    ++count_;
    if (!ok) ++failures_;
  }
  int count() const { return count_; }
  int failures() const { return failures_; }
  double value() const { return value_; }
  double threshold() const { return threshold_; }
  bool pass() const { return failures_ == 0 && count_ > 0; }

 private:
  int count_ = 0;
  int failures_ = 0;
  double ratio_ = 0.0;
  double value_ = 0.0;
  double threshold_ = 0.0;
};

CheckRow row_from(int criterion, std::string name, std::string expected, const Worst& w, std::string observed = {}) {
  CheckRow r;
  r.criterion = criterion;
  r.name = std::move(name);
  r.expected = std::move(expected);
  if (observed.empty()) {
    observed = std::to_string(w.count() - w.failures()) + "/" + std::to_string(w.count()) + " ok, worst " + fmt(w.value());
  }
  r.observed = std::move(observed);
  r.residual = w.value();
  r.threshold = w.threshold();
  r.pass = w.pass();
  return r;
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix x(n, n);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(x);
  return qr.householderQ();
}

// Q^T diag(signs * magnitudes) Q with Q orthogonal: nondegenerate and well conditioned.
Gram random_gram(int n, std::mt19937_64& rng, int minus) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = (i < minus ? -1.0 : 1.0) * mag(rng);
  const Matrix q = random_orthogonal(n, rng);
  return Gram(q.transpose() * d.asDiagonal() * q);
}

Gram random_lorentzian(int n, std::mt19937_64& rng) { return random_gram(n, rng, 1); }

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix x(rows, cols);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

Matrix random_skew(int n, std::mt19937_64& rng) {
  const Matrix x = random_matrix(n, n, rng);
  return x - x.transpose();
}

struct Sample {
  MetricVariant variant;
  double eps;
  MetricLieAlgebra m;
};

// Five draws per variant and, for variants with a sign parameter, per sign.
std::vector<Sample> catalog_samples(std::uint64_t seed) {
  auto rng = rng_for(seed, 1);
  std::vector<Sample> out;
  for (MetricVariant v : all_metric_variants()) {
    const std::vector<double> signs = has_sign_param(v) ? std::vector<double>{-1.0, 1.0} : std::vector<double>{1.0};
    for (double eps : signs) {
      for (int k = 0; k < 5; ++k) {
        CatalogKey key{variant_algebra(v), v, sample_params(v, rng, eps)};
        out.push_back({v, eps, make_metric(key)});
      }
    }
  }
  return out;
}

// Every catalog algebra with 20 random nondegenerate metrics of random signature.
std::vector<MetricLieAlgebra> route_instances(std::uint64_t seed) {
  auto rng = rng_for(seed, 5);
  std::vector<MetricLieAlgebra> out;
  for (AlgebraName name : all_algebra_names()) {
    const LieAlgebra a = make_algebra(name);
    std::uniform_int_distribution<int> minus(0, a.dim());
    for (int k = 0; k < 20; ++k) out.emplace_back(a, random_gram(a.dim(), rng, minus(rng)));
  }
  return out;
}

void criterion_ricci_flat(const std::vector<Sample>& samples, const Tolerances& t, std::vector<CheckRow>& rows) {
  std::map<MetricVariant, std::pair<Worst, Worst>> per;
  for (const auto& s : samples) {
    auto& [lor, ric] = per[s.variant];
    lor.flag(signature(s.m.gram(), t.linear).is_lorentzian());
    const auto report = einstein_classify(s.m, t.verdict, t.linear);
    ric.bound(max_abs(report.ricci), t.verdict * s.m.scale());
  }
  for (const auto& [v, w] : per) {
    const auto& [lor, ric] = w;
    Worst both = ric;
    if (!lor.pass()) both.flag(false);
    rows.push_back(row_from(1, std::string(to_string(v)) + " Lorentzian and Ricci-flat",
                            "signature (1,n-1), |Ric| <= " + fmt(t.verdict) + "*scale", both,
                            std::to_string(lor.count() - lor.failures()) + "/" + std::to_string(lor.count()) +
                                " Lorentzian, max |Ric| " + fmt(ric.value())));
  }
}

void criterion_flatness(const std::vector<Sample>& samples, const Tolerances& t, std::vector<CheckRow>& rows) {
  Worst flat;
  Worst m43_minus;
  Worst m43_plus;
  double smallest_plus = -1.0;
  for (const auto& s : samples) {
    if (s.variant == MetricVariant::m32 || s.variant == MetricVariant::m42 || s.variant == MetricVariant::m52) {
      flat.bound(curvature_tensor(s.m).max_abs(), t.verdict * s.m.scale());
    } else if (s.variant == MetricVariant::m43) {
      const double k = curvature_tensor(s.m).max_abs();
      if (s.eps < 0) {
        m43_minus.bound(k, t.verdict * s.m.scale());
      } else {
        const double gap = kSeparation * s.m.scale();
        m43_plus.flag(k > gap);
        if (smallest_plus < 0 || k / gap < smallest_plus) smallest_plus = k / gap;
      }
    }
  }
  rows.push_back(row_from(2, "m32, m42, m52 flat", "|K| <= " + fmt(t.verdict) + "*scale", flat));
  rows.push_back(row_from(2, "m43 eps=-1 flat", "|K| <= " + fmt(t.verdict) + "*scale", m43_minus));
  CheckRow r = row_from(2, "m43 eps=+1 not flat", "|K| > 1e-6*scale", m43_plus,
                        std::to_string(m43_plus.count() - m43_plus.failures()) + "/" + std::to_string(m43_plus.count()) +
                            " curved, min |K|/(1e-6*scale) " + fmt(smallest_plus));
  r.residual = smallest_plus;
  r.threshold = 1.0;
  rows.push_back(r);
}

void criterion_degenerate_center(const std::vector<Sample>& samples, const Tolerances& t, std::vector<CheckRow>& rows) {
  std::map<MetricVariant, Worst> per;
  for (const auto& s : samples) {
    const auto c = classify_subspace(s.m.gram(), center(s.m.algebra(), t.linear), t.linear);
    per[s.variant].flag(c.tag == SubspaceTag::Degenerate);
  }
  for (const auto& [v, w] : per) {
    rows.push_back(row_from(3, std::string(to_string(v)) + " center degenerate", "Degenerate", w,
                            std::to_string(w.count() - w.failures()) + "/" + std::to_string(w.count()) + " Degenerate"));
  }
}

void criterion_examples(const Tolerances& t, std::vector<CheckRow>& rows) {
  for (AlgebraName name : {AlgebraName::EX6, AlgebraName::EX7}) {
    const MetricLieAlgebra m = make_metric({name, std::nullopt, {}});
    const auto report = einstein_classify(m, t.verdict, t.linear);
    Worst w;
    w.bound(max_abs(report.ricci), t.verdict * m.scale());
    rows.push_back(row_from(4, std::string(to_string(name)) + " Ricci-flat", "|Ric| <= " + fmt(t.verdict) + "*scale", w,
                            "|Ric| " + fmt(max_abs(report.ricci))));
    const auto c = classify_subspace(m.gram(), center(m.algebra(), t.linear), t.linear);
    Worst tag;
    tag.flag(c.tag != SubspaceTag::Degenerate);
    rows.push_back(row_from(4, std::string(to_string(name)) + " center nondegenerate", "not Degenerate", tag,
                            std::string(to_string(c.tag))));
  }

  const MetricLieAlgebra m = make_metric({AlgebraName::EX8, std::nullopt, {}});
  const auto report = einstein_classify(m, t.verdict, t.linear);
  const double s = m.scale();
  Worst einstein;
  einstein.bound(report.einstein_residual, t.verdict * s);
  rows.push_back(row_from(4, "EX8 Einstein", "|Ric - lambda Id| <= " + fmt(t.verdict) + "*scale", einstein,
                          "residual " + fmt(report.einstein_residual) + ", verdict " + std::string(to_string(report.verdict))));
  Worst nonzero;
  nonzero.flag(std::abs(report.lambda_estimate) > kSeparation);
  CheckRow nz = row_from(4, "EX8 lambda nonzero", "|lambda| > 1e-6", nonzero, "lambda " + fmt_fixed(report.lambda_estimate));
  nz.residual = std::abs(report.lambda_estimate);
  nz.threshold = kSeparation;
  rows.push_back(nz);
  Worst frozen;
  frozen.bound(std::abs(report.lambda_estimate - kEx8Lambda), t.verdict * s);
  rows.push_back(row_from(4, "EX8 lambda regression", "lambda = " + fmt_fixed(kEx8Lambda), frozen,
                          "lambda " + fmt_fixed(report.lambda_estimate)));

  const Subspace z = center(m.algebra(), t.linear);
  const Subspace dz = derived_ideal(m.algebra(), t.linear);
  const auto zc = classify_subspace(m.gram(), z, t.linear);
  const auto dc = classify_subspace(m.gram(), dz, t.linear);
  Worst ztag;
  ztag.flag(zc.tag == SubspaceTag::EuclideanNondegenerate);
  rows.push_back(row_from(4, "EX8 center", "EuclideanNondegenerate", ztag, std::string(to_string(zc.tag))));
  Worst dtag;
  dtag.flag(dc.tag == SubspaceTag::LorentzianNondegenerate);
  rows.push_back(row_from(4, "EX8 derived ideal", "LorentzianNondegenerate", dtag, std::string(to_string(dc.tag))));
  Worst incl;
  incl.bound(dz.inclusion_residual(z), t.linear * scale_of({1.0}));
  rows.push_back(row_from(4, "EX8 center in derived ideal", "inclusion residual <= " + fmt(t.linear) + "*scale", incl,
                          "dim Z " + std::to_string(z.dim()) + ", residual " + fmt(incl.value())));
}

void criterion_routes(const std::vector<MetricLieAlgebra>& inst, const Tolerances& t, std::vector<CheckRow>& rows) {
  Worst general;
  Worst nilpotent;
  for (const auto& m : inst) {
    const Matrix def = ricci_via_definition(m);
    general.bound(max_abs(Matrix(def - ricci_general(m))), t.verdict * m.scale());
    if (is_nilpotent(m.algebra(), t.linear)) {
      nilpotent.bound(max_abs(Matrix(ricci_nilpotent(m, t.linear) - ricci_operator(m, def))), t.verdict * m.scale());
    }
  }
  rows.push_back(row_from(5, "definition vs general formula", "<= " + fmt(t.verdict) + "*scale", general));
  rows.push_back(row_from(5, "definition vs nilpotent formula", "<= " + fmt(t.verdict) + "*scale", nilpotent));
}

void criterion_trace_identity(const std::vector<MetricLieAlgebra>& inst, const Tolerances& t,
                              std::vector<CheckRow>& rows) {
  Worst w;
  for (const auto& m : inst) {
    const J1J2 j = j1_j2(m);
    w.bound(std::abs(j.j1.trace() - j.j2.trace()), t.verdict * m.scale());
  }
  rows.push_back(row_from(6, "tr J1 = tr J2", "<= " + fmt(t.verdict) + "*scale", w));
}

void criterion_trace_formula(const std::vector<MetricLieAlgebra>& inst, std::uint64_t seed, const Tolerances& t,
                             std::vector<CheckRow>& rows) {
  auto rng = rng_for(seed, 7);
  std::normal_distribution<double> normal;
  Worst random_e;
  Worst derivations;
  std::map<const LieAlgebra*, std::vector<Derivation>> cache;
  for (const auto& m : inst) {
    const int n = m.dim();
    const double s = m.scale();
    for (int k = 0; k < 50; ++k) {
      const Matrix e = random_matrix(n, n, rng);
      const TracePair p = trace_q_times(m, e);
      random_e.bound(std::abs(p.lhs - p.rhs), t.verdict * s * scale_of({max_abs(e)}));
    }
    const auto der = derivation_space(m.algebra(), t.linear);
    Matrix e = Matrix::Zero(n, n);
    for (const auto& d : der) e += normal(rng) * d.matrix;
    if (max_abs(e) > 0.0) e /= max_abs(e);
    const TracePair p = trace_q_times(m, e);
    derivations.bound(std::max(std::abs(p.lhs), std::abs(p.rhs)), t.verdict * s);
  }
  rows.push_back(row_from(7, "tr(QE) = rhs, 50 random E per instance", "|lhs - rhs| <= " + fmt(t.verdict) + "*scale",
                          random_e));
  rows.push_back(row_from(7, "E a derivation: both sides vanish", "|lhs|, |rhs| <= " + fmt(t.verdict) + "*scale",
                          derivations));
}

void criterion_double_extension(std::uint64_t seed, const Tolerances& t, std::vector<CheckRow>& rows) {
  auto rng = rng_for(seed, 8);
  std::uniform_int_distribution<int> vdim(1, 6);
  Worst nil;
  Worst lor;
  Worst flat;
  Worst trip;
  for (int k = 0; k < 100; ++k) {
    const ExtensionData d = random_admissible_nilpotent(vdim(rng), rng);
    const MetricLieAlgebra m = extend(d, t.linear);
    nil.flag(is_nilpotent(m.algebra(), t.linear));
    lor.flag(signature(m.gram(), t.linear).is_lorentzian());
    const auto report = einstein_classify(m, t.verdict, t.linear);
    flat.bound(max_abs(report.ricci), t.verdict * m.scale());
    try {
      const auto dec = decompose(m, t.linear, t.verdict);
      if (!dec) {
        trip.flag(false);
      } else {
        trip.bound(dec->model_residual, t.verdict * m.scale());
      }
    } catch (const NotApplicable&) {
      trip.flag(false);
    }
  }
  Worst ebar;
  for (int k = 0; k < 100; ++k) {
    const ExtensionData d = random_lie_admissible(vdim(rng), rng);
    const MetricLieAlgebra m = extend(d, t.linear);
    const Matrix ric = ricci_via_definition(m);
    const int last = m.dim() - 1;
    ebar.bound(std::abs(ricci_ebar(d, t.linear) - ric(last, last)), t.verdict * m.scale());
  }
  rows.push_back(row_from(8, "admissible nilpotent data: extension nilpotent", "100/100", nil,
                          std::to_string(nil.count() - nil.failures()) + "/" + std::to_string(nil.count())));
  rows.push_back(row_from(8, "admissible nilpotent data: extension Lorentzian", "100/100", lor,
                          std::to_string(lor.count() - lor.failures()) + "/" + std::to_string(lor.count())));
  rows.push_back(row_from(8, "admissible nilpotent data: extension Ricci-flat", "|Ric| <= " + fmt(t.verdict) + "*scale",
                          flat));
  rows.push_back(row_from(8, "ric(ebar, ebar) closed form", "<= " + fmt(t.verdict) + "*scale", ebar));
  rows.push_back(row_from(8, "decompose(extend(d)) model form", "<= " + fmt(t.verdict) + "*scale", trip));
}

void criterion_two_step(std::uint64_t seed, const Tolerances& t, std::vector<CheckRow>& rows) {
  auto rng = rng_for(seed, 9);
  std::uniform_int_distribution<int> pd(1, 3);
  std::uniform_int_distribution<int> qd(2, 4);
  std::uniform_int_distribution<int> ad(0, 2);
  Worst flat;
  Worst degenerate;
  for (int k = 0; k < 50; ++k) {
    const int p = pd(rng);
    const int q = qd(rng);
    const Vector alpha = random_matrix(q, 1, rng);
    const Matrix c = random_matrix(q, p, rng);
    Matrix a = random_skew(q, rng);
    a *= std::sqrt(2.0 * c.squaredNorm() / a.squaredNorm());
    const MetricLieAlgebra m = two_step_extension(p, q, alpha, c, a, ad(rng), t.linear);
    const auto report = einstein_classify(m, t.verdict, t.linear);
    flat.bound(max_abs(report.ricci), t.verdict * m.scale());
    const auto cls = classify_subspace(m.gram(), center(m.algebra(), t.linear), t.linear);
    degenerate.flag(cls.tag == SubspaceTag::Degenerate);
  }
  Worst violations;
  std::uniform_real_distribution<double> factor(1.2, 2.0);
  for (int k = 0; k < 10; ++k) {
    const int p = pd(rng);
    const int q = qd(rng);
    const Vector alpha = random_matrix(q, 1, rng);
    const Matrix c = random_matrix(q, p, rng);
    Matrix a = random_skew(q, rng);
    a *= factor(rng) * std::sqrt(2.0 * c.squaredNorm() / a.squaredNorm());
    bool raised = false;
    try {
      two_step_extension(p, q, alpha, c, a, 0, t.linear);
    } catch (const ConstraintViolation&) {
      raised = true;
    }
    violations.flag(raised);
  }
  rows.push_back(row_from(9, "constraint satisfied: Ricci-flat", "|Ric| <= " + fmt(t.verdict) + "*scale", flat));
  rows.push_back(row_from(9, "constraint satisfied: center degenerate", "50/50 Degenerate", degenerate,
                          std::to_string(degenerate.count() - degenerate.failures()) + "/" +
                              std::to_string(degenerate.count()) + " Degenerate"));
  rows.push_back(row_from(9, "constraint violated: rejected", "10/10 ConstraintViolation", violations,
                          std::to_string(violations.count() - violations.failures()) + "/" +
                              std::to_string(violations.count()) + " rejected"));
}

void criterion_derivations(const Tolerances& t, std::vector<CheckRow>& rows) {
  for (AlgebraName name : all_algebra_names()) {
    if (is_example(name)) continue;
    const LieAlgebra a = make_algebra(name);
    const Derivation d = listed_derivation(name);
    const double defect = derivation_defect(a, d.matrix);
    Worst w;
    w.bound(defect, kDerivationBound);
    w.flag(std::abs(d.trace()) > kDerivationBound);
    const auto found = find_nonzero_trace_derivation(a, t.linear);
    w.flag(found.has_value());
    std::ostringstream obs;
    obs << "defect " << fmt(defect) << ", trace " << d.trace() << ", search "
        << (found ? "trace " + fmt_fixed(found->trace()) : std::string("none"));
    CheckRow r = row_from(10, std::string(to_string(name)) + " listed derivation",
                          "defect <= 1e-12, trace != 0, nonzero-trace derivation found", w, obs.str());
    r.residual = defect;
    r.threshold = kDerivationBound;
    rows.push_back(r);
  }
}

// Lorentzian lemmas: for gram-skew A and isotropic e, <Ae, Ae> >= 0 with
// equality iff Ae is parallel to e; if moreover Ae = 0 then tr A^2 <= 0, and
// tr A^2 = 0 forces tr(AB) = 0 for every other such B.
void criterion_lemmas(std::uint64_t seed, const Tolerances& t, std::vector<CheckRow>& rows) {
  auto rng = rng_for(seed, 11);
  std::uniform_int_distribution<int> dim(3, 8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Worst iso_ineq;
  Worst iso_eq;
  Worst square_ineq;
  Worst square_deg;
  auto parallel_residual = [](const Vector& x, const Vector& e) {
    return (x - e * (e.dot(x) / e.squaredNorm())).norm();
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(rng);
    const Gram g = random_lorentzian(n, rng);
    const Matrix ginv = g.matrix().inverse();
    const Vector e = *find_isotropic_in(g, Subspace::whole(n), t.linear);
    const Vector ge = g.matrix() * e;

    // Generic gram-skew A.
    const Matrix a = ginv * random_skew(n, rng);
    const double s1 = scale_of({max_abs(a) * max_abs(a) * max_abs(g.matrix())});
    const double val = g.inner(a * e, a * e);
    iso_ineq.bound(-val, t.linear * s1);
    if (std::abs(val) <= t.linear * s1) iso_eq.bound(parallel_residual(a * e, e), t.linear * s1);

    // M = I - e w^T with w^T e = 1 kills e; M^T W M is skew and annihilates e.
    const Vector r0 = random_matrix(n, 1, rng);
    const Vector wv = e + (r0 - e * e.dot(r0));
    const Matrix mproj = Matrix::Identity(n, n) - e * wv.transpose();

    // Equality case: A e = tau e exactly in exact arithmetic.
    const double tau = u(rng);
    const Matrix weq = tau * (ge * wv.transpose() - wv * ge.transpose());
    const Matrix aeq = ginv * (weq + mproj.transpose() * random_skew(n, rng) * mproj);
    const double s2 = scale_of({max_abs(aeq) * max_abs(aeq) * max_abs(g.matrix())});
    const double veq = g.inner(aeq * e, aeq * e);
    iso_ineq.bound(-veq, t.linear * s2);
    if (std::abs(veq) <= t.linear * s2) {
      iso_eq.bound(parallel_residual(aeq * e, e), t.linear * s2);
    } else {
      iso_eq.flag(false);
    }

    // Generic A with A e = 0.
    const Matrix ak = ginv * (mproj.transpose() * random_skew(n, rng) * mproj);
    const double s3 = scale_of({max_abs(ak) * max_abs(ak) * max_abs(g.matrix())});
    square_ineq.bound((ak * ak).trace(), t.linear * s3);

    // Degenerate case: A x = <u, x> e - <e, x> u with u orthogonal to e.
    Vector uvec = random_matrix(n, 1, rng);
    const Vector dual = ginv * wv;  // <dual, e> = w^T e = 1
    uvec -= dual * g.inner(uvec, e);
    const Matrix adeg = e * (g.matrix() * uvec).transpose() - uvec * ge.transpose();
    const double s4 = scale_of({max_abs(adeg) * max_abs(adeg) * max_abs(g.matrix())});
    const double tr_deg = (adeg * adeg).trace();
    square_ineq.bound(tr_deg, t.linear * s4);
    if (std::abs(tr_deg) <= t.linear * s4) {
      const double s5 = scale_of({max_abs(adeg) * max_abs(ak) * max_abs(g.matrix())});
      square_deg.bound(std::abs((adeg * ak).trace()), t.linear * s5);
    } else {
      square_deg.flag(false);
    }
  }
  rows.push_back(row_from(11, "<Ae,Ae> >= 0 for skew A, isotropic e", "-<Ae,Ae> <= " + fmt(t.linear) + "*scale",
                          iso_ineq));
  rows.push_back(row_from(11, "<Ae,Ae> = 0 implies Ae parallel to e", "residual <= " + fmt(t.linear) + "*scale", iso_eq));
  rows.push_back(row_from(11, "Ae = 0 implies tr A^2 <= 0", "tr A^2 <= " + fmt(t.linear) + "*scale", square_ineq));
  rows.push_back(row_from(11, "tr A^2 = 0 implies tr(AB) = 0", "|tr AB| <= " + fmt(t.linear) + "*scale", square_deg));
}

void criterion_search(std::uint64_t seed, std::vector<CheckRow>& rows) {
  SearchSpec spec;
  spec.algebra = make_algebra(AlgebraName::L3_2);
  spec.target = SearchTarget::RicciFlat;
  spec.minus = 1;
  spec.plus = 2;
  spec.seed = seed;
  spec.restarts = 8;
  spec.max_iters = 5000;
  spec.tol = kSeparation;
  const SearchResult first = run_search(spec);
  const SearchResult second = run_search(spec);

  Worst conv;
  conv.bound(first.residual, kSeparation);
  conv.flag(first.converged);
  rows.push_back(row_from(12, "L3_2 Ricci-flat search converges", "residual <= 1e-6 within 5000 iterations", conv,
                          std::string(first.converged ? "converged" : "not converged") + ", residual " +
                              fmt(first.residual) + ", " + std::to_string(first.iterations) + " iterations"));
  Worst same;
  const bool identical = first.residual == second.residual && first.iterations == second.iterations &&
                         first.best_restart == second.best_restart && first.best_gram.has_value() &&
                         second.best_gram.has_value() && first.best_gram->matrix() == second.best_gram->matrix();
  same.flag(identical);
  rows.push_back(row_from(12, "search is deterministic", "bit-identical repeat", same,
                          identical ? "identical" : "differs"));
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list{
      {1, "ricci-flat", "Classified metrics are Lorentzian and Ricci-flat"},
      {2, "flatness", "Flatness of m32, m42, m52 and the sign rule for m43"},
      {3, "degenerate-center", "Classified metrics have a degenerate center"},
      {4, "examples", "Examples in dimensions 6, 7 and 8"},
      {5, "routes", "Three Ricci formulas agree"},
      {6, "trace-identity", "tr J1 = tr J2"},
      {7, "trace-formula", "tr(QE) formula and derivations"},
      {8, "double-extension", "Double extensions and their decomposition"},
      {9, "two-step", "Two-step constructor"},
      {10, "derivations", "Listed non-trace-free derivations"},
      {11, "lemmas", "Lorentzian skew-map lemmas"},
      {12, "search", "Metric search regression"},
  };
  return list;
}

bool VerifyReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::vector<std::pair<int, bool>> VerifyReport::criterion_status() const {
  std::map<int, bool> status;
  for (const auto& r : rows) {
    auto [it, inserted] = status.emplace(r.criterion, r.pass);
    if (!inserted) it->second = it->second && r.pass;
  }
  return {status.begin(), status.end()};
}

VerifyReport run_verification(const VerifyOptions& options) {
  std::set<int> selected;
  for (const auto& item : options.only) {
    bool matched = false;
    for (const auto& c : criteria()) {
      if (item == c.name || item == std::to_string(c.id)) {
        selected.insert(c.id);
        matched = true;
      }
    }
    if (!matched) throw InvalidInput("unknown criterion '" + item + "'");
  }
  auto wanted = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  Tolerances t;
  if (options.tol) {
    if (!(*options.tol > 0.0)) throw InvalidInput("tolerance must be positive");
    t.verdict = *options.tol;
    t.linear = *options.tol;
  }

  VerifyReport report;
  auto& rows = report.rows;
  if (wanted(1) || wanted(2) || wanted(3)) {
    const auto samples = catalog_samples(options.seed);
    if (wanted(1)) criterion_ricci_flat(samples, t, rows);
    if (wanted(2)) criterion_flatness(samples, t, rows);
    if (wanted(3)) criterion_degenerate_center(samples, t, rows);
  }
  if (wanted(4)) criterion_examples(t, rows);
  if (wanted(5) || wanted(6) || wanted(7)) {
    const auto inst = route_instances(options.seed);
    if (wanted(5)) criterion_routes(inst, t, rows);
    if (wanted(6)) criterion_trace_identity(inst, t, rows);
    if (wanted(7)) criterion_trace_formula(inst, options.seed, t, rows);
  }
  if (wanted(8)) criterion_double_extension(options.seed, t, rows);
  if (wanted(9)) criterion_two_step(options.seed, t, rows);
  if (wanted(10)) criterion_derivations(t, rows);
  if (wanted(11)) criterion_lemmas(options.seed, t, rows);
  if (wanted(12)) criterion_search(options.seed, rows);
  return report;
}

void print_rows(std::ostream& os, const VerifyReport& report) {
  for (const auto& r : report.rows) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.criterion << "] " << r.name << "\n"
       << "        expected: " << r.expected << "\n"
       << "        observed: " << r.observed << "\n"
       << "        residual: " << fmt(r.residual) << " (bound " << fmt(r.threshold) << ")\n";
  }
}

void print_summary(std::ostream& os, const VerifyReport& report) {
  const auto status = report.criterion_status();
  int passed = 0;
  for (const auto& [id, ok] : status) {
    const auto& info = criteria()[static_cast<std::size_t>(id - 1)];
    os << (ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << " (" << info.name << "): " << info.title
       << "\n";
    passed += ok ? 1 : 0;
  }
  os << passed << "/" << status.size() << " criteria passed\n";
}

}  // namespace mlie
