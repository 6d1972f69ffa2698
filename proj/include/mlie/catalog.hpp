#pragma once

// Nilpotent Lie algebras of dimension <= 5 with their Ricci-flat Lorentzian
// metrics, and three higher-dimensional examples.

#include "mlie/common.hpp"
#include "mlie/curvature.hpp"
#include "mlie/liealg.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mlie {

enum class AlgebraName { L3_2, L4_2, L4_3, L5_2, L5_3, L5_4, L5_5, L5_6, L5_7, L5_8, L5_9, EX6, EX7, EX8 };

enum class MetricVariant { m32, m42, m43, m52, m53, m551, m552, m56, m58, m59 };

const std::vector<AlgebraName>& all_algebra_names();
const std::vector<MetricVariant>& all_metric_variants();

std::string_view to_string(AlgebraName name);
std::string_view to_string(MetricVariant variant);
/// Throws UnknownName.
AlgebraName parse_algebra_name(std::string_view s);
MetricVariant parse_metric_variant(std::string_view s);

/// The algebra a metric variant lives on.
AlgebraName variant_algebra(MetricVariant variant);
bool is_example(AlgebraName name);

using Params = std::map<std::string, double>;

struct CatalogKey {
  AlgebraName name = AlgebraName::L3_2;
  std::optional<MetricVariant> metric_variant;
  Params params;
};

LieAlgebra make_algebra(AlgebraName name);

/// Builds the metric algebra. Table algebras need a variant (BadParams otherwise);
/// examples take no variant and no parameters. Throws BadParams on a missing,
/// unknown or out-of-range parameter, or when the Gram matrix is degenerate or
/// not Lorentzian.
MetricLieAlgebra make_metric(const CatalogKey& key);

/// The non-trace-free derivation listed for a table algebra, verbatim.
/// Throws UnknownName for the examples.
Derivation listed_derivation(AlgebraName name);

enum class ParamKind {
  Positive,  // > 0
  Nonzero,   // != 0
  UnitOpen,  // |p| < 1
  Free,
  Sign,      // -1 or +1
};

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::Free;
};

const std::vector<ParamSpec>& variant_params(MetricVariant variant);
/// e.g. "alpha > 0, |a| < 1, eps = +-1".
std::string describe_constraints(MetricVariant variant);

/// One random draw inside the constraints: Positive in [0.5, 2], Nonzero in
/// +-[0.5, 2], UnitOpen in [-0.9, 0.9], Free in [-2, 2]. Sign parameters are
/// set to `eps` (they are enumerated by callers, not sampled).
Params sample_params(MetricVariant variant, std::mt19937_64& rng, double eps = 1.0);

bool has_sign_param(MetricVariant variant);

/// Symbolic origin of the irrational constants of an example, empty otherwise.
std::string catalog_comment(AlgebraName name);

}  // namespace mlie
