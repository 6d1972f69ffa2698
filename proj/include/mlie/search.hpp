#pragma once

// Numerical search for Einstein and Ricci-flat metrics on a fixed Lie algebra.

#include "mlie/common.hpp"
#include "mlie/curvature.hpp"

#include <cstdint>
#include <optional>

namespace mlie {

enum class SearchTarget { RicciFlat, Einstein };

struct SearchSpec {
  LieAlgebra algebra;
  SearchTarget target = SearchTarget::RicciFlat;
  int minus = 1;
  int plus = 0;
  std::uint64_t seed = 0;
  int restarts = 8;
  int max_iters = 5000;
  double step0 = 0.1;
  double tol = 1e-6;
  /// Worker threads for the restarts; 0 picks the hardware concurrency. The
  /// result does not depend on this value.
  int threads = 0;
};

struct SearchResult {
  std::optional<Gram> best_gram;
  double residual = 0.0;  // normalized objective of best_gram
  int iterations = 0;     // iterations spent by the winning restart
  bool converged = false;
  int best_restart = -1;
};

/// |Ric - lambda Id|_F for the operator Ric of (algebra, gram), with
/// lambda = tr(Ric)/n for Einstein and 0 for RicciFlat. Throws DegenerateGram.
double einstein_residual(const LieAlgebra& algebra, const Gram& gram, SearchTarget target = SearchTarget::Einstein);

/// The objective minimized by run_search: with P = A^{-1}, the residual of the
/// algebra rewritten in basis P with Gram eta, divided by the squared Frobenius
/// norm of its structure constants. Invariant under A -> tA, so shrinking the
/// brackets toward the abelian algebra does not lower it. Zero for abelian algebras.
double normalized_residual(const LieAlgebra& algebra, const Matrix& a, const Vector& eta, SearchTarget target);

/// Throws InvalidInput when the signature does not match the dimension or restarts < 1.
SearchResult run_search(const SearchSpec& spec);

}  // namespace mlie
