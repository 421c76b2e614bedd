#pragma once

#include "stochlie/basis.hpp"
#include "stochlie/classify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stochlie {

/// Numeric certificate for the Levi decomposition: the radical span {Z, R_i}
/// is an ideal with derived series hitting zero, the complement {A_ij, H_k}
/// is a subalgebra, and together they fill the algebra.
struct LeviCertificate {
  int n = 0;
  std::vector<std::string> radical_labels;
  std::vector<std::string> levi_labels;
  double ideal_residual = 0.0;       // leakage of [algebra, radical] into the complement
  double subalgebra_residual = 0.0;  // leakage of [levi, levi] into the radical
  std::vector<int> derived_series_dims;  // e.g. {n, n-1, 0}
  int direct_sum_rank = 0;

  bool solvable() const {
    return !derived_series_dims.empty() && derived_series_dims.back() == 0;
  }
  bool pass(const Tolerance& tol = {}) const;
};

LeviCertificate certify_levi(const StochasticBasis& basis, const Tolerance& tol = {});

/// Independent radical witness: the trace-form orthogonal complement of the
/// derived algebra, with ad taken over the whole algebra. Returns an
/// orthonormal coordinate basis; must span {Z, R_i}. Throws ConsistencyError
/// when the singular-value gap is too small to call the rank.
std::vector<Vector> radical_from_killing(const StochasticBasis& basis,
                                         const Tolerance& tol = {});

/// Components of M^T S M = [[0, beta^T], [0, levi_block + beta0/sqrt(n-1) I]]
/// for S = beta0 Z + sum beta_i R_i + A with A in the Levi factor.
struct AffineBlockForm {
  int n = 0;
  double beta0 = 0.0;  // coefficient of the unit-normalized Z
  Vector beta;         // length n-1
  Matrix levi_block;   // (n-1) x (n-1), traceless

  /// Scalar block produced by the conjugation itself; the unnormalized
  /// convention absorbs the sqrt(n-1) into the coefficient.
  double beta0_scaled() const { return beta0 / std::sqrt(static_cast<double>(n - 1)); }
  Matrix reassemble() const;
};

AffineBlockForm affine_block_form(const RepresentationMaps& maps, const Matrix& s,
                                  const Tolerance& tol = {});

struct GroupConjugacyReport {
  int n = 0;
  double first_column_residual = 0.0;   // M^T P M e_0 vs e_0
  double multiplicativity_residual = 0.0;
  bool pass = false;
};

/// Conjugates a stochastic-group element (nonsingular, P * ones = ones) and
/// checks it lands in the affine matrix group. Multiplicativity is checked
/// against q when given, else against the pair (P, P).
GroupConjugacyReport group_level_check(const RepresentationMaps& maps, const Matrix& p,
                                       const Tolerance& tol = {},
                                       const std::optional<Matrix>& q = std::nullopt);

}  // namespace stochlie
