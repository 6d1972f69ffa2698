#include "gen.hpp"
#include "mlie/catalog.hpp"
#include "mlie/io.hpp"

#include <doctest.h>

#include <string>

using namespace mlie;

namespace {

int error_line(const std::string& text) {
  try {
    parse_algebra(text, "t.json");
  } catch (const FileError& e) {
    CHECK(std::string(e.what()).rfind("t.json:" + std::to_string(e.line()) + ": ", 0) == 0);
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("algebra files parse") {
  const std::string text = R"({
  "dim": 3,
  "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 1.0}}],
  "metric": [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
  "comment": "heisenberg"
})";
  const AlgebraFile f = parse_algebra(text);
  CHECK(f.algebra == make_algebra(AlgebraName::L3_2));
  REQUIRE(f.metric.has_value());
  CHECK(f.metric->matrix()(0, 2) == 1.0);
  CHECK(f.comment == "heisenberg");

  const AlgebraFile bare = parse_algebra(R"({"dim": 2, "brackets": []})");
  CHECK(bare.algebra.is_abelian());
  CHECK_FALSE(bare.metric.has_value());
}

TEST_CASE("algebra file errors carry line numbers") {
  CHECK(error_line("{\n  \"dim\": 3,\n  \"brackets\": [\n    {\"i\": 2, \"j\": 1, \"coeffs\": {\"3\": 1}}\n  ]\n}") == 4);
  CHECK(error_line("{\n  \"dim\": 3,\n  \"brackets\": [\n    {\"i\": 1, \"j\": 4, \"coeffs\": {}}\n  ]\n}") == 4);
  CHECK(error_line("{\n  \"dim\": 2,\n  \"brackets\": [],\n  \"metric\": [[1, 2],\n    [3, 1]]\n}") >= 4);
  CHECK(error_line("{\n  \"dim\": 2,\n  \"brackets\": [],\n  \"extra\": 1\n}") == 4);
  CHECK(error_line("{\n  \"dim\": 2,\n  \"brackets\": [\n") >= 3);
  CHECK(error_line("{\n  \"brackets\": []\n}") == 1);
  // Jacobi failure.
  CHECK(error_line("{\"dim\": 3, \"brackets\": [{\"i\": 1, \"j\": 2, \"coeffs\": {\"3\": 1}},\n"
                   " {\"i\": 1, \"j\": 3, \"coeffs\": {\"1\": 1}}]}") >= 1);
  CHECK_THROWS_AS(parse_algebra(R"({"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 1}},
    {"i": 1, "j": 2, "coeffs": {"2": 1}}]})"),
                  FileError);
}

TEST_CASE("property: algebra files round-trip bit-exactly") {
  gen::Rng rng(71);
  for (AlgebraName name : all_algebra_names()) {
    const LieAlgebra a = make_algebra(name).in_basis(gen::invertible(rng, make_algebra(name).dim()));
    AlgebraFile f{a, gen::gram(rng, a.dim(), 1), "round trip"};
    const std::string text = dump_algebra(f);
    const AlgebraFile back = parse_algebra(text, "<rt>", 1e-6);
    CHECK(back.algebra == f.algebra);
    CHECK(back.metric->matrix() == f.metric->matrix());
    CHECK(back.comment == f.comment);
    CHECK(dump_algebra(back) == text);
  }
}

TEST_CASE("extension files") {
  std::mt19937_64 rng(72);
  gen::Rng grng(73);
  const ExtensionData d = random_lie_admissible(4, rng);
  ExtensionFile f{d, gen::invertible(grng, 6), "ext", {}};
  const std::string text = dump_extension(f);
  const ExtensionFile back = parse_extension(text);
  CHECK(back.data.k == d.k);
  CHECK(back.data.d == d.d);
  CHECK(back.data.mu == d.mu);
  CHECK(back.data.b == d.b);
  CHECK(*back.basis_change == *f.basis_change);
  CHECK(back.warnings.empty());
  CHECK(dump_extension(back) == text);

  const ExtensionFile w = parse_extension(
      R"({"v_dim": 2, "K": [[0, 1], [0, 0]], "D": [[0, 0], [0, 0]], "mu": 0, "b": [0, 0]})", "w.json");
  CHECK(w.warnings.size() == 1);
  CHECK(w.data.k(0, 1) == -w.data.k(1, 0));
  CHECK_THROWS_AS(parse_extension(R"({"v_dim": 2, "K": [[0, 1]], "D": [[0, 0], [0, 0]], "mu": 0, "b": [0, 0]})"),
                  FileError);
}
