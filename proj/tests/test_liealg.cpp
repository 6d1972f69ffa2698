#include "gen.hpp"
#include "mlie/catalog.hpp"
#include "mlie/liealg.hpp"

#include <doctest.h>

using namespace mlie;

namespace {

Vector unit(int n, int i) { return Vector::Unit(n, i); }

LieAlgebra solvable2() { return LieAlgebra::from_brackets(2, {{0, 1, unit(2, 1)}}); }

std::vector<Index> dims(const std::vector<Subspace>& s) {
  std::vector<Index> out;
  for (const auto& x : s) out.push_back(x.dim());
  return out;
}

}  // namespace

TEST_CASE("brackets are antisymmetric bit-for-bit") {
  const LieAlgebra a = make_algebra(AlgebraName::EX8);
  gen::Rng rng(21);
  const Vector u = gen::matrix(rng, 8, 1);
  const Vector v = gen::matrix(rng, 8, 1);
  CHECK(a.bracket(u, v) == -a.bracket(v, u));
  CHECK_THROWS_AS(LieAlgebra::from_brackets(3, {{1, 1, unit(3, 0)}}), InvalidInput);
}

TEST_CASE("from_brackets stores i > j with a sign") {
  const LieAlgebra a = LieAlgebra::from_brackets(3, {{1, 0, unit(3, 2)}});
  CHECK(a.structure(0, 1, 2) == -1.0);
}

TEST_CASE("jacobi defect") {
  CHECK(jacobi_defect(LieAlgebra(4)) == 0.0);
  CHECK(jacobi_defect(make_algebra(AlgebraName::L5_6)) == 0.0);
  const LieAlgebra bad = LieAlgebra::from_brackets(3, {{0, 1, unit(3, 2)}, {0, 2, unit(3, 0)}});
  CHECK(jacobi_defect(bad) > 0.5);
  CHECK_THROWS_AS(LieAlgebra::checked(3, {{0, 1, unit(3, 2)}, {0, 2, unit(3, 0)}}), InvalidInput);
}

TEST_CASE("ad matrices") {
  CHECK(ad(LieAlgebra(3), unit(3, 0)).isZero(0.0));
  const LieAlgebra h = make_algebra(AlgebraName::L3_2);
  Matrix expect = Matrix::Zero(3, 3);
  expect(2, 1) = 1.0;
  CHECK(ad(h, unit(3, 0)) == expect);
  CHECK(ad(h, unit(3, 2)).isZero(0.0));
}

TEST_CASE("center and derived ideal") {
  CHECK(center(LieAlgebra(3)).dim() == 3);
  const Subspace z6 = center(make_algebra(AlgebraName::L5_6));
  CHECK(z6.dim() == 1);
  CHECK(z6.distance(unit(5, 4)) < 1e-12);
  CHECK(center(make_algebra(AlgebraName::L3_2)).distance(unit(3, 2)) < 1e-12);

  CHECK(derived_ideal(LieAlgebra(3)).dim() == 0);
  const Subspace d6 = derived_ideal(make_algebra(AlgebraName::L5_6));
  CHECK(d6.dim() == 3);
  for (int k = 2; k < 5; ++k) CHECK(d6.distance(unit(5, k)) < 1e-12);
  const Subspace d43 = derived_ideal(make_algebra(AlgebraName::L4_3));
  CHECK(d43.dim() == 2);
  CHECK(d43.distance(unit(4, 2)) < 1e-12);
  CHECK(d43.distance(unit(4, 3)) < 1e-12);
}

TEST_CASE("lower central series") {
  CHECK(dims(lower_central_series(LieAlgebra(3))) == std::vector<Index>{3, 0});
  CHECK(dims(lower_central_series(make_algebra(AlgebraName::L5_6))) == std::vector<Index>{5, 3, 2, 1, 0});
  CHECK(dims(lower_central_series(make_algebra(AlgebraName::L4_2))) == std::vector<Index>{4, 1, 0});
  CHECK(dims(lower_central_series(solvable2())) == std::vector<Index>{2, 1});
}

TEST_CASE("nilpotency") {
  for (AlgebraName name : all_algebra_names()) CHECK(is_nilpotent(make_algebra(name)));
  CHECK(is_nilpotent(LieAlgebra(4)));
  CHECK_FALSE(is_nilpotent(solvable2()));
}

TEST_CASE("derivations") {
  CHECK(derivation_space(LieAlgebra(2)).size() == 4);
  const LieAlgebra h = make_algebra(AlgebraName::L3_2);
  CHECK(derivation_defect(h, listed_derivation(AlgebraName::L3_2).matrix) == 0.0);
  CHECK(derivation_defect(make_algebra(AlgebraName::L4_3), listed_derivation(AlgebraName::L4_3).matrix) == 0.0);
  CHECK(derivation_defect(h, Matrix::Identity(3, 3)) == 1.0);
  gen::Rng rng(22);
  CHECK(derivation_defect(LieAlgebra(3), gen::matrix(rng, 3, 3)) == 0.0);

  const auto d = find_nonzero_trace_derivation(h);
  REQUIRE(d.has_value());
  CHECK(d->trace() == 2.0);
  const auto d6 = find_nonzero_trace_derivation(make_algebra(AlgebraName::L5_6));
  REQUIRE(d6.has_value());
  CHECK(std::abs(d6->trace()) > 0.5);
  const auto da = find_nonzero_trace_derivation(LieAlgebra(4));
  REQUIRE(da.has_value());
  CHECK(da->trace() == 4.0);
}

TEST_CASE("listed derivations lie in the computed derivation space") {
  for (AlgebraName name : {AlgebraName::L3_2, AlgebraName::L5_7}) {
    const LieAlgebra a = make_algebra(name);
    const auto basis = derivation_space(a);
    Matrix cols(a.dim() * a.dim(), static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) cols.col(static_cast<Index>(k)) = basis[k].matrix.reshaped();
    const Subspace der(cols.rows(), cols);
    CHECK(der.distance(listed_derivation(name).matrix.reshaped()) < 1e-12);
  }
}

TEST_CASE("semisimple algebras have only trace-free derivations") {
  // so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
  const LieAlgebra so3 =
      LieAlgebra::checked(3, {{0, 1, unit(3, 2)}, {1, 2, unit(3, 0)}, {2, 0, unit(3, 1)}});
  CHECK(derivation_space(so3).size() == 3);
  CHECK_FALSE(find_nonzero_trace_derivation(so3).has_value());
}

TEST_CASE("property: derivation spaces survive basis changes") {
  gen::Rng rng(23);
  for (AlgebraName name : all_algebra_names()) {
    const LieAlgebra a = make_algebra(name);
    const Matrix p = gen::invertible(rng, a.dim());
    const LieAlgebra b = a.in_basis(p);
    CHECK(jacobi_defect(b) < 1e-9);
    const auto da = derivation_space(a);
    const auto db = derivation_space(b);
    CHECK(da.size() == db.size());
    for (const auto& d : db) CHECK(derivation_defect(b, d.matrix) < 1e-9);
    // P^{-1} D P is a derivation of the rewritten algebra.
    const Matrix pinv = p.inverse();
    for (const auto& d : da) CHECK(derivation_defect(b, pinv * d.matrix * p) < 1e-9);
    CHECK(is_nilpotent(b));
    CHECK(dims(lower_central_series(b)) == dims(lower_central_series(a)));
  }
}

TEST_CASE("property: the center commutes with everything") {
  gen::Rng rng(24);
  const auto& names = all_algebra_names();
  for (int trial = 0; trial < 50; ++trial) {
    const LieAlgebra a0 = make_algebra(names[rng.integer(0, static_cast<int>(names.size()) - 1)]);
    const LieAlgebra a = a0.in_basis(gen::invertible(rng, a0.dim()));
    const Subspace z = center(a);
    CHECK(z.dim() == center(a0).dim());
    const Vector u = gen::matrix(rng, a.dim(), 1);
    for (Index k = 0; k < z.dim(); ++k) CHECK(max_abs(a.bracket(z.basis().col(k), u)) < 1e-9);
    CHECK(derived_ideal(a).dim() == derived_ideal(a0).dim());
  }
}
