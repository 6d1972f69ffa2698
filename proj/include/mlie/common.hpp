#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace mlie {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance for rank, null-count and degeneracy decisions.
inline constexpr double kLinearTol = 1e-9;
/// Relative tolerance for Einstein, Ricci-flat and flat verdicts.
inline constexpr double kVerdictTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MLIE_ERROR_TYPE(Name)            \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

MLIE_ERROR_TYPE(InvalidInput);
MLIE_ERROR_TYPE(DegenerateGram);
MLIE_ERROR_TYPE(NotNilpotent);
MLIE_ERROR_TYPE(NotLie);
MLIE_ERROR_TYPE(NotApplicable);
MLIE_ERROR_TYPE(SingularK0);
MLIE_ERROR_TYPE(ConstraintViolation);
MLIE_ERROR_TYPE(UnknownName);
MLIE_ERROR_TYPE(BadParams);

#undef MLIE_ERROR_TYPE

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Problem scale: max(1, largest magnitude involved).
inline double scale_of(std::initializer_list<double> magnitudes) {
  double s = 1.0;
  for (double m : magnitudes) s = std::max(s, std::abs(m));
  return s;
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace mlie
