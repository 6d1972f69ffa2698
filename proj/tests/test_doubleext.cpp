#include "gen.hpp"
#include "mlie/catalog.hpp"
#include "mlie/doubleext.hpp"

#include <doctest.h>

using namespace mlie;

namespace {

Matrix skew2(double t) { return (Matrix(2, 2) << 0, -t, t, 0).finished(); }

ExtensionData flat_pair_data(double alpha, double eps) {
  return ExtensionData(skew2(alpha), (Matrix(2, 2) << 0, eps * alpha, 0, 0).finished(), 0.0, Vector::Zero(2));
}

ExtensionData zero_data(int v) { return ExtensionData(Matrix::Zero(v, v), Matrix::Zero(v, v), 0.0, Vector::Zero(v)); }

}  // namespace

TEST_CASE("admissibility examples") {
  const auto z = check_admissible(ExtensionData(Matrix::Zero(2, 2), Matrix::Zero(2, 2), 0.0, Vector::Ones(2)));
  CHECK(z.is_lie);
  CHECK(z.is_nilpotent);
  CHECK(z.is_einstein);

  for (double eps : {-1.0, 1.0}) {
    const auto t = check_admissible(flat_pair_data(1.3, eps));
    CHECK(t.is_lie);
    CHECK(t.is_nilpotent);
    CHECK(t.is_einstein);
  }

  const ExtensionData k_only(skew2(1.0), Matrix::Zero(2, 2), 0.0, Vector::Zero(2));
  const auto k = check_admissible(k_only);
  CHECK(k.is_lie);
  CHECK_FALSE(k.is_einstein);
  CHECK(k.trace_residual == doctest::Approx(2.0));

  const ExtensionData not_lie(skew2(1.0), Matrix::Identity(2, 2), 0.0, Vector::Zero(2));
  CHECK_FALSE(check_admissible(not_lie).is_lie);
  CHECK_THROWS_AS(extend(not_lie), NotLie);
  CHECK_THROWS_AS(ricci_ebar(not_lie), NotLie);
}

TEST_CASE("K is antisymmetrized on construction") {
  const ExtensionData d((Matrix(2, 2) << 0, 1, 3, 0).finished(), Matrix::Zero(2, 2), 0.0, Vector::Zero(2));
  CHECK(d.k == skew2(1.0));
}

TEST_CASE("extensions of simple data") {
  const auto m = extend(zero_data(1));
  CHECK(m.algebra().is_abelian());
  CHECK(m.gram().matrix() == (Matrix(3, 3) << 0, 0, 1, 0, 1, 0, 1, 0, 0).finished());
  CHECK(ricci_ebar(zero_data(3)) == 0.0);

  const auto t = extend(flat_pair_data(1.0, 1.0));
  CHECK(t.dim() == 4);
  CHECK(is_nilpotent(t.algebra()));
  CHECK(einstein_classify(t).verdict == Verdict::RicciFlat);
  CHECK(center(t.algebra()).dim() == center(make_algebra(AlgebraName::L4_3)).dim());
  CHECK(derivation_space(t.algebra()).size() == derivation_space(make_algebra(AlgebraName::L4_3)).size());
  CHECK(ricci_ebar(flat_pair_data(1.0, 1.0)) == 0.0);

  const ExtensionData k_only(skew2(1.0), Matrix::Zero(2, 2), 0.0, Vector::Zero(2));
  CHECK(ricci_ebar(k_only) == 0.5);
  const auto h = extend(k_only);
  const Matrix ric = ricci_via_definition(h);
  CHECK(ric(3, 3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("decompose on catalog metrics") {
  const auto l32 = make_metric({AlgebraName::L3_2, MetricVariant::m32, {{"alpha", 1.0}}});
  const auto dec = decompose(l32);
  REQUIRE(dec.has_value());
  CHECK(dec->data.v_dim() == 1);
  CHECK(max_abs(dec->data.k) < 1e-12);
  CHECK(max_abs(dec->data.d) < 1e-12);
  CHECK(dec->model_residual < 1e-12);

  const auto ex6 = make_metric({AlgebraName::EX6, std::nullopt, {}});
  CHECK_FALSE(decompose(ex6).has_value());

  const auto ex8 = make_metric({AlgebraName::EX8, std::nullopt, {}});
  CHECK_THROWS_AS(decompose(ex8), NotApplicable);
  CHECK_THROWS_AS(decompose(MetricLieAlgebra(make_algebra(AlgebraName::L3_2), Gram::identity(3))), NotApplicable);
}

TEST_CASE("kd_generate") {
  const KDPair z = kd_generate(2, 0, Matrix::Zero(2, 2), Matrix::Zero(2, 0), Matrix::Zero(0, 0), Matrix::Zero(0, 0));
  CHECK(z.k.isZero(0.0));

  const double s = 0.7;
  const KDPair t = kd_generate(1, 2, Matrix::Zero(1, 1), Matrix::Zero(1, 2), skew2(1.0),
                               (Matrix(2, 2) << 0, 0, 0, s).finished());
  CHECK(max_abs(Matrix(t.k * t.d + t.d.transpose() * t.k)) < 1e-15);
  CHECK((t.d * t.d).isZero(1e-15));
  CHECK(std::abs(t.d(1, 2)) == doctest::Approx(s));

  CHECK_THROWS_AS(kd_generate(0, 2, Matrix::Zero(0, 0), Matrix::Zero(0, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2)),
                  SingularK0);
  CHECK_THROWS_AS(kd_generate(0, 2, Matrix::Zero(0, 0), Matrix::Zero(0, 2), Matrix::Identity(2, 2),
                              Matrix::Zero(2, 2)),
                  InvalidInput);
  CHECK_THROWS_AS(kd_generate(0, 2, Matrix::Zero(0, 0), Matrix::Zero(0, 2), skew2(1.0),
                              (Matrix(2, 2) << 0, 1, 0, 0).finished()),
                  InvalidInput);

  gen::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int f = rng.integer(0, 3);
    const int fp = 2 * rng.integer(1, 2);
    Matrix k0 = Matrix::Zero(fp, fp);
    for (int i = 0; i < fp; i += 2) k0.block(i, i, 2, 2) = skew2(rng.magnitude(0.5, 2.0));
    const Matrix sr = gen::matrix(rng, fp, fp);
    const Matrix sym = (sr + sr.transpose()) * 0.5;
    const KDPair kd = kd_generate(f, fp, gen::matrix(rng, f, f), gen::matrix(rng, f, fp), k0, sym);
    CHECK(max_abs(Matrix(kd.k * kd.d + kd.d.transpose() * kd.k)) < 1e-9 * scale_of({max_abs(kd.d)}));
  }
}

TEST_CASE("two-step constructor") {
  const MetricLieAlgebra zero = two_step_extension(1, 2, Vector::Zero(2), Matrix::Zero(2, 1), Matrix::Zero(2, 2), 1);
  CHECK(zero.algebra().is_abelian());
  CHECK(einstein_classify(zero).verdict == Verdict::Flat);

  // The literal values sqrt(2) and sqrt(1/2) do not meet the constraint summed over all ordered pairs.
  const Vector c_half = Vector::Constant(2, std::sqrt(0.5));
  CHECK_THROWS_AS(two_step_extension(1, 2, Vector::Zero(2), Matrix(c_half), skew2(-std::sqrt(2.0)), 0),
                  ConstraintViolation);
  const MetricLieAlgebra m = two_step_extension(1, 2, Vector::Zero(2), Matrix(Vector::Ones(2)), skew2(-std::sqrt(2.0)), 0);
  CHECK(max_abs(ricci_via_definition(m)) < 1e-12);
  CHECK(classify_subspace(m.gram(), center(m.algebra())).tag == SubspaceTag::Degenerate);

  CHECK_THROWS_AS(two_step_extension(0, 2, Vector::Zero(2), Matrix::Zero(2, 0), skew2(-1.0), 0), ConstraintViolation);
  CHECK_THROWS_AS(two_step_extension(0, 2, Vector::Zero(3), Matrix::Zero(2, 0), skew2(-1.0), 0), InvalidInput);
}

TEST_CASE("property: random admissible nilpotent data extend to Ricci-flat Lorentzian nilpotent algebras") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 6);
    const ExtensionData d = random_admissible_nilpotent(v, rng);
    const auto adm = check_admissible(d);
    CHECK(adm.is_lie);
    CHECK(adm.is_nilpotent);
    CHECK(adm.is_einstein);
    const auto m = extend(d);
    CHECK(is_nilpotent(m.algebra()));
    CHECK(signature(m.gram()) == Signature{1, v + 1, 0});
    const auto r = einstein_classify(m);
    CHECK((r.verdict == Verdict::RicciFlat || r.verdict == Verdict::Flat));
    CHECK(classify_subspace(m.gram(), center(m.algebra())).tag == SubspaceTag::Degenerate);

    const auto dec = decompose(m);
    REQUIRE(dec.has_value());
    CHECK(dec->model_residual < 1e-8 * m.scale());
    // The recovered data is admissible and rebuilds an isometric copy.
    CHECK(check_admissible(dec->data).is_einstein);
    const MetricLieAlgebra back = m.in_basis(dec->basis_change);
    CHECK(max_abs(Matrix(back.gram().matrix() - extend(dec->data).gram().matrix())) < 1e-9);
  }
}

TEST_CASE("property: ric(ebar, ebar) closed form with mu != 0") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 6);
    const ExtensionData d = random_lie_admissible(v, rng);
    CHECK(d.mu != 0.0);
    const auto m = extend(d);
    CHECK(jacobi_defect(m.algebra()) < 1e-9 * m.scale());
    const Matrix ric = ricci_via_definition(m);
    CHECK(std::abs(ric(v + 1, v + 1) - ricci_ebar(d)) < 1e-8 * m.scale());
  }
}
