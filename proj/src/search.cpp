#include "mlie/search.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <future>
#include <random>
#include <thread>

namespace mlie {

namespace {

double residual_of_operator(const Matrix& ric, SearchTarget target) {
  const Index n = ric.rows();
  const double lambda = (target == SearchTarget::Einstein && n > 0) ? ric.trace() / static_cast<double>(n) : 0.0;
  return (ric - lambda * Matrix::Identity(n, n)).norm();
}

double structure_norm_sq(const LieAlgebra& a) {
  double s = 0.0;
  for (const auto& t : a.brackets()) s += t.value.squaredNorm();
  return s;
}

Matrix floor_singular_values(const Matrix& a, double floor) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vector s = svd.singularValues();
  if (s.size() == 0 || s.minCoeff() >= floor) return a;
  s = s.cwiseMax(floor);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

struct RestartOutcome {
  Matrix a;
  double residual = 0.0;
  int iterations = 0;
};

RestartOutcome run_restart(const SearchSpec& spec, const Vector& eta, int restart) {
  const int n = spec.algebra.dim();
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xffffffffu), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 0.5);

  Matrix a = Matrix::Identity(n, n);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] += normal(rng);
  a = floor_singular_values(a, 1e-6);
  a *= std::sqrt(static_cast<double>(n)) / a.norm();

  auto objective = [&](const Matrix& x) { return normalized_residual(spec.algebra, x, eta, spec.target); };
  RestartOutcome out{a, objective(a), 0};
  double step = spec.step0;
  Matrix grad(n, n);
  while (out.residual > spec.tol && out.iterations < spec.max_iters && step > 1e-14) {
    ++out.iterations;
    const double h = 1e-5 * scale_of({max_abs(out.a)});
    for (Index k = 0; k < out.a.size(); ++k) {
      Matrix plus = out.a;
      Matrix minus = out.a;
      plus.data()[k] += h;
      minus.data()[k] -= h;
      grad.data()[k] = (objective(plus) - objective(minus)) / (2.0 * h);
    }
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) break;
    // Step halving until the objective decreases; grow again after a success.
    while (step > 1e-14) {
      Matrix trial = floor_singular_values(out.a - (step / gnorm) * grad, 1e-6);
      trial *= std::sqrt(static_cast<double>(n)) / trial.norm();
      const double r = objective(trial);
      if (r < out.residual) {
        out.a = trial;
        out.residual = r;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
  }
  return out;
}

bool verdict_matches(Verdict v, SearchTarget target) {
  if (target == SearchTarget::RicciFlat) return v == Verdict::RicciFlat || v == Verdict::Flat;
  return v != Verdict::NotEinstein;
}

}  // namespace

double einstein_residual(const LieAlgebra& algebra, const Gram& gram, SearchTarget target) {
  const MetricLieAlgebra m(algebra, gram);
  return residual_of_operator(ricci_operator(m, ricci_general(m)), target);
}

double normalized_residual(const LieAlgebra& algebra, const Matrix& a, const Vector& eta, SearchTarget target) {
  const LieAlgebra local = algebra.in_basis(a.partialPivLu().inverse());
  const double c2 = structure_norm_sq(local);
  if (c2 == 0.0) return 0.0;
  const MetricLieAlgebra m(local, Gram::diagonal(eta));
  return residual_of_operator(ricci_operator(m, ricci_general(m)), target) / c2;
}

SearchResult run_search(const SearchSpec& spec) {
  const int n = spec.algebra.dim();
  if (spec.minus < 0 || spec.plus < 0 || spec.minus + spec.plus != n) {
    throw InvalidInput("signature target must sum to the algebra dimension");
  }
  if (spec.restarts < 1) throw InvalidInput("restarts must be at least 1");
  if (spec.max_iters < 0) throw InvalidInput("max_iters must be non-negative");
  if (!(spec.step0 > 0.0) || !(spec.tol > 0.0)) throw InvalidInput("step0 and tol must be positive");

  Vector eta = Vector::Ones(n);
  eta.head(spec.minus).setConstant(-1.0);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(spec.restarts));
  int workers = spec.threads > 0 ? spec.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, spec.restarts);
  for (int start = 0; start < spec.restarts; start += workers) {
    std::vector<std::future<RestartOutcome>> batch;
    const int stop = std::min(spec.restarts, start + workers);
    for (int r = start; r < stop; ++r) {
      batch.push_back(std::async(std::launch::async, [&spec, &eta, r] { return run_restart(spec, eta, r); }));
    }
    for (int r = start; r < stop; ++r) outcomes[static_cast<std::size_t>(r)] = batch[static_cast<std::size_t>(r - start)].get();
  }

  // Merge by minimum residual, ties to the lowest restart index.
  int best = 0;
  for (int r = 1; r < spec.restarts; ++r) {
    if (outcomes[static_cast<std::size_t>(r)].residual < outcomes[static_cast<std::size_t>(best)].residual) best = r;
  }
  const RestartOutcome& win = outcomes[static_cast<std::size_t>(best)];
  SearchResult result;
  result.best_gram = Gram(win.a.transpose() * eta.asDiagonal() * win.a);
  result.residual = win.residual;
  result.iterations = win.iterations;
  result.best_restart = best;
  if (win.residual <= spec.tol) {
    const auto report = einstein_classify(MetricLieAlgebra(spec.algebra, *result.best_gram), 10.0 * spec.tol);
    result.converged = verdict_matches(report.verdict, spec.target);
  }
  return result;
}

}  // namespace mlie
