#pragma once

namespace abba {

/// Numerical thresholds for the float backend. The exact backend ignores them.
struct TolerancePolicy {
  /// Singular values at or below rank_rel_tol * sigma_max * max(rows, cols) count as zero.
  double rank_rel_tol = 1e-10;
  /// Relative residual accepted for solves, predicates and certificates.
  double residual_tol = 1e-10;
  /// Largest condition number accepted as evidence of invertibility.
  double max_condition = 1e8;

  /// Scales rank_rel_tol and residual_tol jointly by `factor`.
  TolerancePolicy scaled(double factor) const {
    TolerancePolicy out = *this;
    out.rank_rel_tol *= factor;
    out.residual_tol *= factor;
    return out;
  }

  /// Throws std::invalid_argument unless every field is strictly positive.
  void validate() const;
};

}  // namespace abba
