#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abba/matrix.hpp"
#include "abba/tolerance.hpp"

namespace abba {

struct ClaimOutcome {
  bool passed = false;
  std::string detail;
};

/// A machine-checkable statement about a fixture, runnable on either backend.
struct Claim {
  std::string statement;
  std::function<ClaimOutcome(Backend, const TolerancePolicy&)> check;
};

struct ClaimResult {
  std::string statement;
  bool passed = false;
  std::string detail;
};

/// Named matrices (stored exactly) plus the claims made about them.
struct Fixture {
  std::string name;
  std::string description;
  std::vector<std::pair<std::string, Matrix<Exact>>> matrices;
  std::vector<Claim> claims;

  /// Throws std::out_of_range for an unknown matrix name.
  const Matrix<Exact>& matrix(const std::string& key) const;

  std::vector<ClaimResult> evaluate(Backend backend, const TolerancePolicy& tol = {}) const;
};

/// The explicit matrices behind the library's worked examples:
///   two-by-two-nonsimilar     2x2 pair with AB not similar to BA
///   hermitian-pair-3x3        Hermitian pair with AB ~ BA but not unitarily
///   transpose-3x3             A ~ A^T but not unitarily
///   hermitian-normal-4x4      Hermitian A, normal B, AB not similar to BA
///   phi-conjugator            W = [[I, I], [-I, I]] block-diagonalizing phi(X)
std::vector<Fixture> catalog();

std::optional<Fixture> find_fixture(const std::string& name);

}  // namespace abba
