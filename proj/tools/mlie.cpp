// mlie: curvature of left-invariant metrics on Lie algebras from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 not applicable.

#include "mlie/catalog.hpp"
#include "mlie/curvature.hpp"
#include "mlie/doubleext.hpp"
#include "mlie/io.hpp"
#include "mlie/search.hpp"
#include "mlie/verify.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace mlie;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInvalid = 2;
constexpr int kNotApplicable = 3;

struct Globals {
  double tol = kVerdictTol;
  double lin_tol = kLinearTol;
  bool tol_given = false;
};

// Adding +0.0 folds -0 into 0 so reports stay readable.
double tidy(double x) { return x + 0.0; }

void print_matrix(std::ostream& os, const Matrix& m, const std::string& indent = "  ") {
  for (Index i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (Index j = 0; j < m.cols(); ++j) {
      os << (j ? ", " : "") << std::setw(13) << tidy(m(i, j));
    }
    os << "]\n";
  }
}

MetricLieAlgebra load_metric(const std::string& path, const Globals& g) {
  AlgebraFile f = read_algebra_file(path, g.lin_tol);
  if (!f.metric) throw InvalidInput(path + ": the file has no \"metric\" field");
  return MetricLieAlgebra(std::move(f.algebra), *f.metric, g.lin_tol);
}

int cmd_ricci(const std::string& path, const Globals& g) {
  const MetricLieAlgebra m = load_metric(path, g);
  const auto r = einstein_classify(m, g.tol, g.lin_tol);
  std::cout << std::setprecision(10);
  std::cout << "dimension: " << m.dim() << "\n"
            << "signature: " << signature(m.gram(), g.lin_tol) << "\n"
            << "nilpotent: " << (r.nilpotent ? "yes" : "no") << "\n"
            << "verdict: " << to_string(r.verdict) << "\n"
            << "einstein_lambda: ";
  if (r.einstein_lambda) {
    std::cout << tidy(*r.einstein_lambda) << "\n";
  } else {
    std::cout << "none\n";
  }
  std::cout << "scalar: " << tidy(r.scalar) << "\n"
            << "flat: " << (r.flat ? "yes" : "no") << "\n"
            << "lambda_estimate: " << tidy(r.lambda_estimate) << "\n"
            << "einstein_residual: " << r.einstein_residual << "\n"
            << "curvature_max: " << r.curvature_max << "\n"
            << "route_residual: " << r.route_residual << "\n"
            << "scale: " << r.scale << "\n"
            << "ricci:\n";
  print_matrix(std::cout, r.ricci);
  std::cout << "ricci_form:\n";
  print_matrix(std::cout, r.ricci_form);
  return kOk;
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw BadParams("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw BadParams("parameter '" + key + "' has a non-numeric value '" + text + "'");
    if (!p.emplace(key, value).second) throw BadParams("parameter '" + key + "' given twice");
  }
  return p;
}

int cmd_catalog_list() {
  for (AlgebraName name : all_algebra_names()) {
    const LieAlgebra a = make_algebra(name);
    std::cout << to_string(name) << "  dim " << a.dim();
    if (is_example(name)) {
      std::cout << "  (fixed orthonormal Lorentzian metric)";
    }
    std::cout << "\n";
    for (MetricVariant v : all_metric_variants()) {
      if (variant_algebra(v) == name) std::cout << "    " << to_string(v) << ": " << describe_constraints(v) << "\n";
    }
  }
  return kOk;
}

int cmd_catalog(const std::vector<std::string>& positional, const std::string& out) {
  if (positional.empty()) throw InvalidInput("catalog needs an algebra name (see --list)");
  CatalogKey key;
  key.name = parse_algebra_name(positional[0]);
  std::vector<std::string> rest(positional.begin() + 1, positional.end());
  if (!rest.empty() && rest[0].find('=') == std::string::npos) {
    key.metric_variant = parse_metric_variant(rest[0]);
    rest.erase(rest.begin());
  }
  key.params = parse_params(rest);

  AlgebraFile f;
  if (!key.metric_variant && !is_example(key.name)) {
    if (!key.params.empty()) throw BadParams("parameters need a metric variant");
    f.algebra = make_algebra(key.name);
  } else {
    const MetricLieAlgebra m = make_metric(key);
    f.algebra = m.algebra();
    f.metric = m.gram();
  }
  std::ostringstream comment;
  comment << to_string(key.name);
  if (key.metric_variant) comment << " " << to_string(*key.metric_variant);
  for (const auto& [k, v] : key.params) comment << " " << k << "=" << std::setprecision(17) << v;
  const std::string origin = catalog_comment(key.name);
  if (!origin.empty()) comment << "; " << origin;
  f.comment = comment.str();
  write_algebra_file(out, f);
  return kOk;
}

int cmd_double_extend(const std::string& in, const std::string& out, const Globals& g) {
  const ExtensionFile e = read_extension_file(in, g.lin_tol);
  for (const auto& w : e.warnings) std::cerr << "warning: " << w << "\n";
  const MetricLieAlgebra m = extend(e.data, g.lin_tol);
  AlgebraFile f{m.algebra(), m.gram(), "double extension, basis (e, f_1..f_v, ebar)"};
  write_algebra_file(out, f);
  return kOk;
}

int cmd_decompose(const std::string& in, const std::string& out, const Globals& g) {
  const MetricLieAlgebra m = load_metric(in, g);
  const auto dec = decompose(m, g.lin_tol, g.tol);
  if (!dec) {
    std::cerr << "not applicable: the center has no isotropic vector\n";
    return kNotApplicable;
  }
  std::ostringstream comment;
  comment << std::setprecision(3) << "basis_change columns are (e, f_1..f_v, ebar); model residual "
          << std::scientific << dec->model_residual;
  ExtensionFile f{dec->data, dec->basis_change, comment.str(), {}};
  write_extension_file(out, f);
  return kOk;
}

int cmd_verify(const std::vector<std::string>& only, std::uint64_t seed, const Globals& g) {
  VerifyOptions opt;
  opt.only = only;
  opt.seed = seed;
  if (g.tol_given) opt.tol = g.tol;
  const VerifyReport report = run_verification(opt);
  print_rows(std::cout, report);
  std::cout << "\n";
  print_summary(std::cout, report);
  return report.all_pass() ? kOk : kVerifyFailed;
}

int cmd_derivations(const std::string& path, const Globals& g) {
  const AlgebraFile f = read_algebra_file(path, g.lin_tol);
  const auto basis = derivation_space(f.algebra, g.lin_tol);
  std::cout << std::setprecision(10) << "derivation space dimension: " << basis.size() << "\n";
  const auto d = find_nonzero_trace_derivation(f.algebra, g.lin_tol);
  if (!d) {
    std::cout << "nonzero-trace derivation: none (every derivation is trace-free)\n";
    return kOk;
  }
  std::cout << "nonzero-trace derivation (trace " << d->trace() << ", defect " << derivation_defect(f.algebra, d->matrix)
            << "):\n";
  print_matrix(std::cout, d->matrix);
  return kOk;
}

struct SearchFlags {
  std::string target = "ricci-flat";
  std::string signature = "1";
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_iters = 5000;
  double step0 = 0.1;
  double tol = 1e-6;
  int threads = 0;
  std::string out;
};

int cmd_search(const std::string& path, const SearchFlags& s, const Globals& g) {
  const AlgebraFile f = read_algebra_file(path, g.lin_tol);
  SearchSpec spec;
  spec.algebra = f.algebra;
  if (s.target == "ricci-flat") {
    spec.target = SearchTarget::RicciFlat;
  } else if (s.target == "einstein") {
    spec.target = SearchTarget::Einstein;
  } else {
    throw InvalidInput("--target must be ricci-flat or einstein");
  }
  // "--signature m" or "--signature m,p".
  const auto comma = s.signature.find(',');
  try {
    spec.minus = std::stoi(s.signature.substr(0, comma));
    spec.plus = comma == std::string::npos ? f.algebra.dim() - spec.minus : std::stoi(s.signature.substr(comma + 1));
  } catch (const std::exception&) {
    throw InvalidInput("--signature expects MINUS or MINUS,PLUS");
  }
  spec.seed = s.seed;
  spec.restarts = s.restarts;
  spec.max_iters = s.max_iters;
  spec.step0 = s.step0;
  spec.tol = s.tol;
  spec.threads = s.threads;
  const SearchResult r = run_search(spec);
  std::cout << std::setprecision(10) << "converged: " << (r.converged ? "yes" : "no") << "\n"
            << "residual: " << r.residual << "\n"
            << "iterations: " << r.iterations << "\n"
            << "best_restart: " << r.best_restart << "\n";
  if (r.best_gram) {
    std::cout << "gram:\n";
    print_matrix(std::cout, r.best_gram->matrix());
    if (!s.out.empty()) {
      write_algebra_file(s.out, {f.algebra, *r.best_gram, "search result, residual " + std::to_string(r.residual)});
    }
  }
  return kOk;
}

int cmd_classify(const std::string& path, const std::string& which, const Globals& g) {
  const MetricLieAlgebra m = load_metric(path, g);
  auto report = [&](const std::string& label, const Subspace& s) {
    const auto c = classify_subspace(m.gram(), s, g.lin_tol);
    std::cout << label << ": " << to_string(c.tag) << " (dim " << s.dim() << ", restricted signature " << c.restricted
              << ")\n";
  };
  if (which != "center" && which != "derived" && which != "both") {
    throw InvalidInput("--subspace must be center, derived or both");
  }
  std::cout << "signature: " << signature(m.gram(), g.lin_tol) << "\n";
  if (which != "derived") report("center", center(m.algebra(), g.lin_tol));
  if (which != "center") report("derived ideal", derived_ideal(m.algebra(), g.lin_tol));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of left-invariant metrics on Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  auto* tol_opt = app.add_option("--tol", g.tol, "Verdict tolerance, relative to the problem scale (default 1e-8)")
                      ->envname("MLIE_TOL")
                      ->check(CLI::PositiveNumber);
  app.add_option("--lin-tol", g.lin_tol, "Linear-algebra tolerance (default 1e-9)")->check(CLI::PositiveNumber);

  std::string in;
  std::string out = "-";

  auto* ricci = app.add_subcommand("ricci", "Ricci operator, Einstein verdict and flatness of an algebra file");
  ricci->add_option("file", in, "Algebra file with a metric")->required();

  std::vector<std::string> cat_args;
  bool list = false;
  auto* catalog = app.add_subcommand("catalog", "Export a catalog algebra, optionally with a metric variant");
  catalog->add_flag("--list", list, "List names, metric variants and parameter constraints");
  catalog->add_option("args", cat_args, "NAME [VARIANT] [key=value ...]");
  catalog->add_option("-o,--output", out, "Output file (default stdout)");

  auto* dext = app.add_subcommand("double-extend", "Build the algebra of an extension-data file");
  dext->add_option("file", in, "Extension data file")->required();
  dext->add_option("-o,--output", out, "Output file (default stdout)");

  auto* dec = app.add_subcommand("decompose", "Write a Ricci-flat algebra as a double extension");
  dec->add_option("file", in, "Algebra file with a metric")->required();
  dec->add_option("-o,--output", out, "Output file (default stdout)");

  std::string only;
  std::uint64_t seed = VerifyOptions{}.seed;
  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance suite");
  verify->add_option("--only", only, "Comma-separated criterion names or numbers");
  verify->add_option("--seed", seed, "Seed for the randomized checks");

  auto* der = app.add_subcommand("derivations", "Derivation space and a nonzero-trace derivation");
  der->add_option("file", in, "Algebra file")->required();

  SearchFlags sf;
  auto* search = app.add_subcommand("search", "Search for a Ricci-flat or Einstein metric");
  search->add_option("file", in, "Algebra file (a metric, if present, is ignored)")->required();
  search->add_option("--target", sf.target, "ricci-flat or einstein")->capture_default_str();
  search->add_option("--signature", sf.signature, "Negative directions, as MINUS or MINUS,PLUS")->capture_default_str();
  search->add_option("--seed", sf.seed)->capture_default_str();
  search->add_option("--restarts", sf.restarts)->capture_default_str();
  search->add_option("--max-iters", sf.max_iters)->capture_default_str();
  search->add_option("--step0", sf.step0)->capture_default_str();
  search->add_option("--search-tol", sf.tol, "Convergence threshold on the normalized residual")->capture_default_str();
  search->add_option("--threads", sf.threads, "Worker threads (0 = hardware)")->capture_default_str();
  search->add_option("-o,--output", sf.out, "Write the algebra with the best metric");

  std::string which = "both";
  auto* classify = app.add_subcommand("classify", "Classify the center and derived ideal against the metric");
  classify->add_option("file", in, "Algebra file with a metric")->required();
  classify->add_option("--subspace", which, "center, derived or both")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  g.tol_given = tol_opt->count() > 0 || std::getenv("MLIE_TOL") != nullptr;

  try {
    if (ricci->parsed()) return cmd_ricci(in, g);
    if (catalog->parsed()) return list ? cmd_catalog_list() : cmd_catalog(cat_args, out);
    if (dext->parsed()) return cmd_double_extend(in, out, g);
    if (dec->parsed()) return cmd_decompose(in, out, g);
    if (verify->parsed()) {
      std::vector<std::string> items;
      std::stringstream ss(only);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) items.push_back(item);
      }
      return cmd_verify(items, seed, g);
    }
    if (der->parsed()) return cmd_derivations(in, g);
    if (search->parsed()) return cmd_search(in, sf, g);
    if (classify->parsed()) return cmd_classify(in, which, g);
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kNotApplicable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
