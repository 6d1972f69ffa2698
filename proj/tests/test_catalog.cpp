#include "gen.hpp"
#include "mlie/catalog.hpp"

#include <doctest.h>

#include <set>

using namespace mlie;

namespace {

Vector unit(int n, int i) { return Vector::Unit(n, i); }

}  // namespace

TEST_CASE("names round-trip") {
  CHECK(all_algebra_names().size() == 14);
  CHECK(all_metric_variants().size() == 10);
  for (AlgebraName n : all_algebra_names()) CHECK(parse_algebra_name(to_string(n)) == n);
  for (MetricVariant v : all_metric_variants()) CHECK(parse_metric_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_algebra_name("L6_1"), UnknownName);
  CHECK_THROWS_AS(parse_metric_variant("m99"), UnknownName);
  CHECK(variant_algebra(MetricVariant::m551) == AlgebraName::L5_5);
  CHECK(variant_algebra(MetricVariant::m552) == AlgebraName::L5_5);
}

TEST_CASE("listed brackets") {
  const LieAlgebra l32 = make_algebra(AlgebraName::L3_2);
  CHECK(l32.brackets().size() == 1);
  CHECK(l32.structure(0, 1) == unit(3, 2));

  const LieAlgebra l56 = make_algebra(AlgebraName::L5_6);
  const auto b = l56.brackets();
  REQUIRE(b.size() == 4);
  CHECK(l56.structure(0, 1) == unit(5, 2));
  CHECK(l56.structure(0, 2) == unit(5, 3));
  CHECK(l56.structure(0, 3) == unit(5, 4));
  CHECK(l56.structure(1, 2) == unit(5, 4));

  const LieAlgebra ex8 = make_algebra(AlgebraName::EX8);
  CHECK(ex8.structure(0, 1, 2) == -4.0 * std::sqrt(3.0));
  CHECK(ex8.structure(0, 2, 3) == std::sqrt(2.5));
  CHECK(ex8.structure(2, 4, 7) == -std::sqrt(21.0));
  for (AlgebraName n : all_algebra_names()) CHECK(jacobi_defect(make_algebra(n)) < 1e-12);
}

TEST_CASE("listed derivations and their traces") {
  const Derivation d32 = listed_derivation(AlgebraName::L3_2);
  CHECK(d32.matrix == Matrix(Vector((Vector(3) << 1, 0, 1).finished()).asDiagonal()));
  CHECK(d32.trace() == 2.0);
  CHECK(listed_derivation(AlgebraName::L5_7).trace() == -1.0);
  CHECK(listed_derivation(AlgebraName::L5_9).trace() == 5.0);
  CHECK(listed_derivation(AlgebraName::L5_6).trace() == 15.0);
  CHECK_THROWS_AS(listed_derivation(AlgebraName::EX6), UnknownName);
}

TEST_CASE("the listed L5_5 entry is not a derivation") {
  // diag(-1, 2, 1, 0, 2) on [e1, e3] = e5: 2 on the left, -1 + 1 = 0 on the right.
  const LieAlgebra a = make_algebra(AlgebraName::L5_5);
  CHECK(derivation_defect(a, listed_derivation(AlgebraName::L5_5).matrix) == 2.0);
  for (AlgebraName n : all_algebra_names()) {
    if (is_example(n) || n == AlgebraName::L5_5) continue;
    CHECK(derivation_defect(make_algebra(n), listed_derivation(n).matrix) <= 1e-12);
  }
  // The algebra still has non-trace-free derivations.
  const auto d = find_nonzero_trace_derivation(a);
  REQUIRE(d.has_value());
  CHECK(derivation_defect(a, d->matrix) <= 1e-12);
}

TEST_CASE("metric parameters are validated") {
  CHECK_THROWS_AS(make_metric({AlgebraName::L3_2, MetricVariant::m32, {{"alpha", 0.0}}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L3_2, MetricVariant::m32, {}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L3_2, MetricVariant::m32, {{"alpha", 1.0}, {"zeta", 1.0}}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L3_2, std::nullopt, {}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L4_2, MetricVariant::m32, {{"alpha", 1.0}}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L4_2, MetricVariant::m42, {{"alpha", 1.0}, {"a", 1.0}}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::L4_3, MetricVariant::m43, {{"a", 0.0}, {"b", 0.0}, {"eps", 0.5}}}),
                  BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::EX6, MetricVariant::m32, {}}), BadParams);
  CHECK_THROWS_AS(make_metric({AlgebraName::EX6, std::nullopt, {{"alpha", 1.0}}}), BadParams);
}

TEST_CASE("constraint descriptions") {
  CHECK(describe_constraints(MetricVariant::m32) == "alpha > 0");
  CHECK(describe_constraints(MetricVariant::m42) == "alpha != 0, |a| < 1");
  CHECK(has_sign_param(MetricVariant::m43));
  CHECK_FALSE(has_sign_param(MetricVariant::m58));
}

TEST_CASE("example metrics") {
  const auto ex6 = make_metric({AlgebraName::EX6, std::nullopt, {}});
  CHECK(ex6.gram()(0, 0) == -1.0);
  const auto ex8 = make_metric({AlgebraName::EX8, std::nullopt, {}});
  CHECK(ex8.gram()(5, 5) == -1.0);
  CHECK(signature(ex8.gram()).is_lorentzian());
  CHECK(classify_subspace(ex8.gram(), center(ex8.algebra())).tag == SubspaceTag::EuclideanNondegenerate);
  CHECK(classify_subspace(ex8.gram(), derived_ideal(ex8.algebra())).tag == SubspaceTag::LorentzianNondegenerate);
  CHECK(derived_ideal(ex8.algebra()).inclusion_residual(center(ex8.algebra())) < 1e-9);
  CHECK_FALSE(catalog_comment(AlgebraName::EX8).empty());
  CHECK(catalog_comment(AlgebraName::L3_2).empty());
}

TEST_CASE("property: sampled metrics are Lorentzian, Ricci-flat, with degenerate center") {
  std::mt19937_64 rng(51);
  for (MetricVariant v : all_metric_variants()) {
    std::set<double> signs{1.0};
    if (has_sign_param(v)) signs.insert(-1.0);
    for (double eps : signs) {
      for (int k = 0; k < 5; ++k) {
        const Params p = sample_params(v, rng, eps);
        const auto m = make_metric({variant_algebra(v), v, p});
        CHECK(signature(m.gram()).is_lorentzian());
        CHECK(max_abs(ricci_via_definition(m)) <= 1e-8 * m.scale());
        CHECK(classify_subspace(m.gram(), center(m.algebra())).tag == SubspaceTag::Degenerate);
        const bool should_be_flat = v == MetricVariant::m32 || v == MetricVariant::m42 || v == MetricVariant::m52 ||
                                    (v == MetricVariant::m43 && eps < 0);
        if (should_be_flat) CHECK(curvature_tensor(m).max_abs() <= 1e-8 * m.scale());
        if (v == MetricVariant::m43 && eps > 0) CHECK(curvature_tensor(m).max_abs() > 1e-6 * m.scale());
      }
    }
  }
}
