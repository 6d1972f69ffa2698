#include "mlie/catalog.hpp"

#include <array>
#include <sstream>

namespace mlie {

namespace {

struct AlgebraEntry {
  AlgebraName name;
  std::string_view label;
};

constexpr std::array<AlgebraEntry, 14> kAlgebras{{
    {AlgebraName::L3_2, "L3_2"}, {AlgebraName::L4_2, "L4_2"}, {AlgebraName::L4_3, "L4_3"},
    {AlgebraName::L5_2, "L5_2"}, {AlgebraName::L5_3, "L5_3"}, {AlgebraName::L5_4, "L5_4"},
    {AlgebraName::L5_5, "L5_5"}, {AlgebraName::L5_6, "L5_6"}, {AlgebraName::L5_7, "L5_7"},
    {AlgebraName::L5_8, "L5_8"}, {AlgebraName::L5_9, "L5_9"}, {AlgebraName::EX6, "EX6"},
    {AlgebraName::EX7, "EX7"},   {AlgebraName::EX8, "EX8"},
}};

struct VariantEntry {
  MetricVariant variant;
  std::string_view label;
  AlgebraName algebra;
};

constexpr std::array<VariantEntry, 10> kVariants{{
    {MetricVariant::m32, "m32", AlgebraName::L3_2},
    {MetricVariant::m42, "m42", AlgebraName::L4_2},
    {MetricVariant::m43, "m43", AlgebraName::L4_3},
    {MetricVariant::m52, "m52", AlgebraName::L5_2},
    {MetricVariant::m53, "m53", AlgebraName::L5_3},
    {MetricVariant::m551, "m551", AlgebraName::L5_5},
    {MetricVariant::m552, "m552", AlgebraName::L5_5},
    {MetricVariant::m56, "m56", AlgebraName::L5_6},
    {MetricVariant::m58, "m58", AlgebraName::L5_8},
    {MetricVariant::m59, "m59", AlgebraName::L5_9},
}};

// Brackets with 1-based indices: [e_i, e_j] = sum coeff e_k.
struct Term {
  int i;
  int j;
  std::vector<std::pair<int, double>> value;
};

LieAlgebra build(int n, const std::vector<Term>& terms) {
  std::vector<BracketTerm> out;
  for (const auto& t : terms) {
    Vector v = Vector::Zero(n);
    for (const auto& [k, c] : t.value) v(k - 1) += c;
    out.push_back({t.i - 1, t.j - 1, v});
  }
  return LieAlgebra::from_brackets(n, out);
}

// Symmetric Gram assembly with 1-based indices; an off-diagonal call fills both entries.
class GramBuilder {
 public:
  explicit GramBuilder(int n) : g_(Matrix::Zero(n, n)) {}
  GramBuilder& set(int i, int j, double v) {
    g_(i - 1, j - 1) = v;
    g_(j - 1, i - 1) = v;
    return *this;
  }
  const Matrix& matrix() const { return g_; }

 private:
  Matrix g_;
};

double get(const Params& p, const std::string& name) { return p.at(name); }

Matrix variant_gram(MetricVariant v, const Params& p) {
  switch (v) {
    case MetricVariant::m32: {
      GramBuilder g(3);
      g.set(1, 3, get(p, "alpha")).set(2, 2, 1.0);
      return g.matrix();
    }
    case MetricVariant::m42: {
      GramBuilder g(4);
      g.set(1, 3, get(p, "alpha")).set(2, 2, 1.0).set(4, 4, 1.0).set(2, 4, get(p, "a"));
      return g.matrix();
    }
    case MetricVariant::m43: {
      const double a = get(p, "a"), b = get(p, "b");
      GramBuilder g(4);
      g.set(1, 1, 1.0).set(1, 2, a).set(2, 2, a * a + b * b).set(2, 3, b).set(2, 4, get(p, "eps")).set(3, 3, 1.0);
      return g.matrix();
    }
    case MetricVariant::m52: {
      const double a = get(p, "a"), b = get(p, "b");
      GramBuilder g(5);
      g.set(1, 3, get(p, "alpha")).set(2, 2, 1.0).set(4, 4, 1.0).set(5, 5, 1.0);
      g.set(2, 4, a).set(2, 5, b).set(4, 5, a * b);
      return g.matrix();
    }
    case MetricVariant::m53: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x");
      GramBuilder g(5);
      g.set(1, 1, 1.0).set(1, 2, a).set(2, 2, a * a + b * b).set(2, 3, b);
      g.set(2, 4, get(p, "eps") * std::sqrt(x * x + 1.0)).set(3, 3, 1.0 + x * x).set(3, 5, -x).set(5, 5, 1.0);
      return g.matrix();
    }
    case MetricVariant::m551: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x"), y = get(p, "y"), r = get(p, "rho");
      const double t = y / x;
      GramBuilder g(5);
      g.set(1, 1, a * a + b * b).set(1, 2, a / r).set(1, 4, r * (b - a * t)).set(1, 5, std::sqrt(x * x + y * y));
      g.set(2, 2, 1.0 / (r * r)).set(2, 4, -t).set(3, 3, x * x / (r * r)).set(4, 4, r * r * (1.0 + t * t));
      return g.matrix();
    }
    case MetricVariant::m552: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x"), r = get(p, "rho");
      GramBuilder g(5);
      g.set(1, 1, 1.0).set(1, 2, b).set(2, 2, a * a + b * b).set(2, 3, a);
      g.set(2, 5, get(p, "eps") * std::sqrt(x * x + 1.0)).set(3, 3, 1.0 + x * x).set(3, 4, x * r).set(4, 4, r * r);
      return g.matrix();
    }
    case MetricVariant::m56: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x"), y = get(p, "y"), mu = get(p, "mu");
      const double t = y / x;
      GramBuilder g(5);
      g.set(1, 1, a * a + b * b).set(1, 2, b + a * t).set(1, 3, mu * a);
      g.set(1, 5, get(p, "eps") * mu * mu * std::sqrt(x * x + y * y + 1.0));
      g.set(2, 2, 1.0 + t * t).set(2, 3, mu * t).set(3, 3, mu * mu).set(4, 4, mu * mu * mu * mu * x * x);
      return g.matrix();
    }
    case MetricVariant::m58: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x"), y = get(p, "y");
      const double t = y / x;
      GramBuilder g(5);
      g.set(1, 1, 1.0).set(1, 2, a).set(1, 3, -t).set(2, 3, b - a * t).set(2, 2, a * a + b * b);
      g.set(2, 5, std::sqrt(x * x + y * y)).set(3, 3, 1.0 + t * t).set(4, 4, x * x);
      return g.matrix();
    }
    case MetricVariant::m59: {
      const double a = get(p, "a"), b = get(p, "b"), x = get(p, "x"), y = get(p, "y");
      const double t = y / x;
      GramBuilder g(5);
      g.set(1, 1, a * a + b * b).set(1, 2, b - a * t).set(1, 3, a);
      g.set(1, 5, get(p, "eps") * std::sqrt(x * x + y * y + 1.0));
      g.set(2, 2, 1.0 + t * t).set(2, 3, -t).set(3, 3, 1.0).set(4, 4, x * x);
      return g.matrix();
    }
  }
  throw UnknownName("unknown metric variant");
}

void check_params(MetricVariant v, const Params& p) {
  const auto& specs = variant_params(v);
  for (const auto& [name, value] : p) {
    const bool known = std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.name == name; });
    if (!known) throw BadParams("unknown parameter '" + name + "' for " + std::string(to_string(v)));
    if (!std::isfinite(value)) throw BadParams("parameter '" + name + "' is not finite");
  }
  for (const auto& s : specs) {
    const auto it = p.find(s.name);
    if (it == p.end()) throw BadParams("missing parameter '" + s.name + "' for " + std::string(to_string(v)));
    const double x = it->second;
    bool ok = true;
    switch (s.kind) {
      case ParamKind::Positive: ok = x > 0.0; break;
      case ParamKind::Nonzero: ok = x != 0.0; break;
      case ParamKind::UnitOpen: ok = std::abs(x) < 1.0; break;
      case ParamKind::Free: break;
      case ParamKind::Sign: ok = x == 1.0 || x == -1.0; break;
    }
    if (!ok) throw BadParams("parameter '" + s.name + "' violates its constraint (" + describe_constraints(v) + ")");
  }
}

}  // namespace

const std::vector<AlgebraName>& all_algebra_names() {
  static const std::vector<AlgebraName> names = [] {
    std::vector<AlgebraName> out;
    for (const auto& e : kAlgebras) out.push_back(e.name);
    return out;
  }();
  return names;
}

const std::vector<MetricVariant>& all_metric_variants() {
  static const std::vector<MetricVariant> variants = [] {
    std::vector<MetricVariant> out;
    for (const auto& e : kVariants) out.push_back(e.variant);
    return out;
  }();
  return variants;
}

std::string_view to_string(AlgebraName name) {
  for (const auto& e : kAlgebras) {
    if (e.name == name) return e.label;
  }
  return "?";
}

std::string_view to_string(MetricVariant variant) {
  for (const auto& e : kVariants) {
    if (e.variant == variant) return e.label;
  }
  return "?";
}

AlgebraName parse_algebra_name(std::string_view s) {
  for (const auto& e : kAlgebras) {
    if (e.label == s) return e.name;
  }
  throw UnknownName("unknown algebra name '" + std::string(s) + "'");
}

MetricVariant parse_metric_variant(std::string_view s) {
  for (const auto& e : kVariants) {
    if (e.label == s) return e.variant;
  }
  throw UnknownName("unknown metric variant '" + std::string(s) + "'");
}

AlgebraName variant_algebra(MetricVariant variant) {
  for (const auto& e : kVariants) {
    if (e.variant == variant) return e.algebra;
  }
  throw UnknownName("unknown metric variant");
}

bool is_example(AlgebraName name) {
  return name == AlgebraName::EX6 || name == AlgebraName::EX7 || name == AlgebraName::EX8;
}

LieAlgebra make_algebra(AlgebraName name) {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double r52 = std::sqrt(2.5);
  const double r72 = std::sqrt(3.5);
  const double r21 = std::sqrt(21.0);
  switch (name) {
    case AlgebraName::L3_2: return build(3, {{1, 2, {{3, 1}}}});
    case AlgebraName::L4_2: return build(4, {{1, 2, {{3, 1}}}});
    case AlgebraName::L4_3: return build(4, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}});
    case AlgebraName::L5_2: return build(5, {{1, 2, {{3, 1}}}});
    case AlgebraName::L5_3: return build(5, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}});
    case AlgebraName::L5_4: return build(5, {{1, 2, {{5, 1}}}, {3, 4, {{5, 1}}}});
    case AlgebraName::L5_5: return build(5, {{1, 2, {{3, 1}}}, {1, 3, {{5, 1}}}, {2, 4, {{5, 1}}}});
    case AlgebraName::L5_6:
      return build(5, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}, {1, 4, {{5, 1}}}, {2, 3, {{5, 1}}}});
    case AlgebraName::L5_7: return build(5, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}, {1, 4, {{5, 1}}}});
    case AlgebraName::L5_8: return build(5, {{1, 2, {{4, 1}}}, {1, 3, {{5, 1}}}});
    case AlgebraName::L5_9: return build(5, {{1, 2, {{3, 1}}}, {1, 3, {{4, 1}}}, {2, 3, {{5, 1}}}});
    case AlgebraName::EX6:
      return build(6, {{1, 3, {{6, 1}}},
                       {1, 5, {{6, 1}}},
                       {2, 3, {{6, -1}}},
                       {2, 4, {{6, 1}}},
                       {3, 4, {{1, 1}}},
                       {3, 5, {{2, 1}}},
                       {4, 5, {{1, 1}, {2, 1}}}});
    case AlgebraName::EX7:
      return build(7, {{1, 3, {{7, r2}}},
                       {2, 4, {{7, r2}}},
                       {4, 5, {{1, -1}}},
                       {4, 6, {{1, -1}}},
                       {3, 5, {{2, -1}}},
                       {3, 6, {{2, -1}}}});
    case AlgebraName::EX8:
      return build(8, {{1, 2, {{3, -4 * r3}}},
                       {1, 3, {{4, r52}}},
                       {1, 4, {{8, -2 * r3}}},
                       {1, 5, {{6, 3 * r72}}},
                       {1, 6, {{7, -4 * r2}}},
                       {2, 3, {{5, -r52}}},
                       {2, 4, {{6, -3 * r72}}},
                       {2, 5, {{7, -2 * r3}}},
                       {2, 6, {{8, -4 * r2}}},
                       {3, 4, {{7, -r21}}},
                       {3, 5, {{8, -r21}}}});
  }
  throw UnknownName("unknown algebra name");
}

MetricLieAlgebra make_metric(const CatalogKey& key) {
  const LieAlgebra algebra = make_algebra(key.name);
  Matrix g;
  if (is_example(key.name)) {
    if (key.metric_variant) throw BadParams("examples carry their own metric; no variant expected");
    if (!key.params.empty()) throw BadParams("examples take no parameters");
    Vector d = Vector::Ones(algebra.dim());
    d(key.name == AlgebraName::EX8 ? 5 : 0) = -1.0;
    g = d.asDiagonal();
  } else {
    if (!key.metric_variant) throw BadParams("a metric variant is required for " + std::string(to_string(key.name)));
    const MetricVariant v = *key.metric_variant;
    if (variant_algebra(v) != key.name) {
      throw BadParams("metric variant " + std::string(to_string(v)) + " does not belong to " +
                      std::string(to_string(key.name)));
    }
    check_params(v, key.params);
    g = variant_gram(v, key.params);
  }
  if (!g.allFinite()) throw BadParams("parameters produce a non-finite Gram matrix");
  try {
    MetricLieAlgebra m(algebra, Gram(g));
    if (!signature(m.gram()).is_lorentzian()) throw BadParams("parameters produce a non-Lorentzian Gram matrix");
    return m;
  } catch (const DegenerateGram&) {
    throw BadParams("parameters produce a degenerate Gram matrix");
  }
}

Derivation listed_derivation(AlgebraName name) {
  auto diag = [](std::initializer_list<double> d) {
    Vector v(static_cast<Index>(d.size()));
    Index k = 0;
    for (double x : d) v(k++) = x;
    return Derivation{Matrix(v.asDiagonal())};
  };
  switch (name) {
    case AlgebraName::L3_2: return diag({1, 0, 1});
    case AlgebraName::L4_2: return diag({1, 0, 1, 0});
    case AlgebraName::L4_3: return diag({-1, 2, 1, 0});
    case AlgebraName::L5_2: return diag({1, 0, 1, 0, 0});
    case AlgebraName::L5_3: return diag({-1, 2, 1, 0, 0});
    case AlgebraName::L5_4: return diag({1, 0, 1, 0, 1});
    case AlgebraName::L5_5: return diag({-1, 2, 1, 0, 2});
    case AlgebraName::L5_6: return diag({1, 2, 3, 4, 5});
    case AlgebraName::L5_7: return diag({1, -2, -1, 0, 1});
    case AlgebraName::L5_8: return diag({1, -1, 0, 0, 1});
    case AlgebraName::L5_9: return diag({2, -1, 1, 3, 0});
    default: break;
  }
  throw UnknownName(std::string(to_string(name)) + " has no listed derivation");
}

const std::vector<ParamSpec>& variant_params(MetricVariant variant) {
  using K = ParamKind;
  static const std::map<MetricVariant, std::vector<ParamSpec>> table{
      {MetricVariant::m32, {{"alpha", K::Positive}}},
      {MetricVariant::m42, {{"alpha", K::Nonzero}, {"a", K::UnitOpen}}},
      {MetricVariant::m43, {{"a", K::Free}, {"b", K::Free}, {"eps", K::Sign}}},
      {MetricVariant::m52, {{"alpha", K::Nonzero}, {"a", K::UnitOpen}, {"b", K::UnitOpen}}},
      {MetricVariant::m53, {{"x", K::Free}, {"a", K::Free}, {"b", K::Free}, {"eps", K::Sign}}},
      {MetricVariant::m551,
       {{"x", K::Nonzero}, {"rho", K::Nonzero}, {"a", K::Free}, {"b", K::Free}, {"y", K::Free}}},
      {MetricVariant::m552, {{"rho", K::Nonzero}, {"x", K::Free}, {"a", K::Free}, {"b", K::Free}, {"eps", K::Sign}}},
      {MetricVariant::m56,
       {{"mu", K::Nonzero}, {"x", K::Nonzero}, {"a", K::Free}, {"b", K::Free}, {"y", K::Free}, {"eps", K::Sign}}},
      {MetricVariant::m58, {{"x", K::Nonzero}, {"a", K::Free}, {"b", K::Free}, {"y", K::Free}}},
      {MetricVariant::m59, {{"x", K::Nonzero}, {"a", K::Free}, {"b", K::Free}, {"y", K::Free}, {"eps", K::Sign}}},
  };
  return table.at(variant);
}

std::string describe_constraints(MetricVariant variant) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : variant_params(variant)) {
    if (!first) os << ", ";
    first = false;
    switch (s.kind) {
      case ParamKind::Positive: os << s.name << " > 0"; break;
      case ParamKind::Nonzero: os << s.name << " != 0"; break;
      case ParamKind::UnitOpen: os << "|" << s.name << "| < 1"; break;
      case ParamKind::Free: os << s.name << " real"; break;
      case ParamKind::Sign: os << s.name << " = +-1"; break;
    }
  }
  return os.str();
}

bool has_sign_param(MetricVariant variant) {
  const auto& specs = variant_params(variant);
  return std::any_of(specs.begin(), specs.end(), [](const ParamSpec& s) { return s.kind == ParamKind::Sign; });
}

Params sample_params(MetricVariant variant, std::mt19937_64& rng, double eps) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> unit(-0.9, 0.9);
  std::uniform_real_distribution<double> free(-2.0, 2.0);
  std::bernoulli_distribution coin;
  Params p;
  for (const auto& s : variant_params(variant)) {
    switch (s.kind) {
      case ParamKind::Positive: p[s.name] = mag(rng); break;
      case ParamKind::Nonzero: {
        const double m = mag(rng);
        p[s.name] = coin(rng) ? m : -m;
        break;
      }
      case ParamKind::UnitOpen: p[s.name] = unit(rng); break;
      case ParamKind::Free: p[s.name] = free(rng); break;
      case ParamKind::Sign: p[s.name] = eps; break;
    }
  }
  return p;
}

std::string catalog_comment(AlgebraName name) {
  switch (name) {
    case AlgebraName::EX7: return "coefficients 1.4142135623730951 = sqrt(2)";
    case AlgebraName::EX8:
      return "coefficients: 6.928203230275509 = 4*sqrt(3), 1.5811388300841898 = sqrt(5/2), "
             "3.4641016151377544 = 2*sqrt(3), 5.612486080160912 = 3*sqrt(7/2), 5.656854249492381 = 4*sqrt(2), "
             "4.58257569495584 = sqrt(21)";
    default: return {};
  }
}

}  // namespace mlie
