#include "gen.hpp"
#include "mlie/catalog.hpp"
#include "mlie/search.hpp"

#include <doctest.h>

using namespace mlie;

TEST_CASE("einstein residual") {
  CHECK(einstein_residual(LieAlgebra(3), Gram::identity(3)) == 0.0);
  const auto l32 = make_metric({AlgebraName::L3_2, MetricVariant::m32, {{"alpha", 1.0}}});
  CHECK(einstein_residual(l32.algebra(), l32.gram()) < 1e-12);
  // ric = diag(-1/2, -1/2, 1/2), lambda = -1/6.
  const double expect = std::sqrt(1.0 / 9 + 1.0 / 9 + 4.0 / 9);
  CHECK(einstein_residual(make_algebra(AlgebraName::L3_2), Gram::identity(3)) == doctest::Approx(expect));
  CHECK(einstein_residual(make_algebra(AlgebraName::L3_2), Gram::identity(3), SearchTarget::RicciFlat) ==
        doctest::Approx(std::sqrt(0.75)));
  CHECK_THROWS_AS(einstein_residual(LieAlgebra(2), Gram::diagonal(Vector::Unit(2, 0))), DegenerateGram);
}

TEST_CASE("normalized residual ignores the scale of A") {
  gen::Rng rng(61);
  const LieAlgebra a = make_algebra(AlgebraName::L4_3);
  const Matrix m = gen::invertible(rng, 4);
  const Vector eta = (Vector(4) << -1, 1, 1, 1).finished();
  const double r1 = normalized_residual(a, m, eta, SearchTarget::RicciFlat);
  const double r2 = normalized_residual(a, 3.0 * m, eta, SearchTarget::RicciFlat);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-10));
  CHECK(normalized_residual(LieAlgebra(3), Matrix::Identity(3, 3), Vector::Ones(3), SearchTarget::Einstein) == 0.0);
}

TEST_CASE("search converges on L3_2 and is deterministic") {
  SearchSpec spec;
  spec.algebra = make_algebra(AlgebraName::L3_2);
  spec.minus = 1;
  spec.plus = 2;
  spec.seed = 7;
  const SearchResult a = run_search(spec);
  CHECK(a.converged);
  CHECK(a.residual <= 1e-6);
  REQUIRE(a.best_gram.has_value());
  CHECK(signature(*a.best_gram) == Signature{1, 2, 0});
  const auto check = einstein_classify(MetricLieAlgebra(spec.algebra, *a.best_gram), 1e-5);
  CHECK((check.verdict == Verdict::RicciFlat || check.verdict == Verdict::Flat));

  spec.threads = 1;
  const SearchResult b = run_search(spec);
  spec.threads = 5;
  const SearchResult c = run_search(spec);
  for (const SearchResult* r : {&b, &c}) {
    CHECK(r->residual == a.residual);
    CHECK(r->iterations == a.iterations);
    CHECK(r->best_restart == a.best_restart);
    CHECK(r->best_gram->matrix() == a.best_gram->matrix());
  }
}

TEST_CASE("abelian search converges immediately") {
  SearchSpec spec;
  spec.algebra = LieAlgebra(3);
  spec.minus = 1;
  spec.plus = 2;
  const SearchResult r = run_search(spec);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
}

TEST_CASE("no Ricci-flat Euclidean metric on L4_3") {
  SearchSpec spec;
  spec.algebra = make_algebra(AlgebraName::L4_3);
  spec.minus = 0;
  spec.plus = 4;
  spec.seed = 3;
  const SearchResult r = run_search(spec);
  CHECK_FALSE(r.converged);
  CHECK(r.residual > 1e-2);
}

TEST_CASE("invalid search specs") {
  SearchSpec spec;
  spec.algebra = make_algebra(AlgebraName::L3_2);
  spec.minus = 1;
  spec.plus = 1;
  CHECK_THROWS_AS(run_search(spec), InvalidInput);
  spec.plus = 2;
  spec.restarts = 0;
  CHECK_THROWS_AS(run_search(spec), InvalidInput);
}
