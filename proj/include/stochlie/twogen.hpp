#pragma once

#include "stochlie/basis.hpp"

#include <string>
#include <vector>

namespace stochlie {

/// Exact rational vector subject to the four generating conditions:
/// (a) zero sum, (b) nonzero entries, (c) pairwise distinct entries,
/// (d) pairwise distinct differences across distinct index pairs.
struct GammaVector {
  std::vector<Rational> entries;

  int m() const { return static_cast<int>(entries.size()); }
  const Rational& at(int i) const { return entries.at(i - 1); }  // 1-based
  Vector to_real() const;
};

struct GammaConditionReport {
  bool zero_sum = false;          // (a)
  bool nonzero_entries = false;   // (b)
  bool distinct_entries = false;  // (c)
  bool distinct_differences = false;  // (d)
  std::string violation;          // first failure, for diagnostics

  bool all() const {
    return zero_sum && nonzero_entries && distinct_entries && distinct_differences;
  }
};

/// Exhaustive exact check of (a)-(d); zero tolerance, O(m^4) difference pairs.
GammaConditionReport check_gamma_conditions(const GammaVector& g);

struct GammaConstruction {
  GammaVector gamma;
  std::vector<Rational> epsilon_choices;  // one per extension step
};

/// Inductive construction: start from (1, -1); each step replaces the last
/// entry t by (t - eps, eps), taking the first eps from 1/3, 1/5, 1/7, ...
/// that keeps all four conditions. Exact throughout.
GammaConstruction construct_gamma(int m);

/// Exact scaling by -1/((n-1) gamma_1), so the leading entry becomes
/// -1/(n-1). Homogeneous, hence condition-preserving.
GammaVector scale_gamma(const GammaVector& g, int n);

/// X = Z + sum beta_k H_k and Y = R_1 + sum A_ij.
///
/// The bracket eigenvalue of Z on R_1 is -1/sqrt(n-1), so cancelling the R_1
/// term of ad X Y needs the leading gamma entry at -1/sqrt(n-1) — an
/// irrational target no rational vector reaches. The construction therefore
/// rescales the exact input by a real factor; `gamma_real` is the vector
/// actually used for beta and for the ad-power coefficients.
struct GeneratorPair {
  int n = 0;
  GammaVector gamma;  // exact input (conditions certified over the rationals)
  Vector gamma_real;  // real rescaling with gamma_real[0] = -1/sqrt(n-1)
  Vector beta;        // gamma_real^T Gamma, length n-2
  Matrix X, Y;
};

GeneratorPair build_generators(const StochasticBasis& basis, const GammaVector& g);

struct ClosureTrace {
  std::vector<int> dims;  // span dimension after seeding and after each round
  int final_dim = 0;
  long bracket_count = 0;
};

/// Saturates the smallest subspace containing the generators and closed under
/// bracketing with them (which is the generated subalgebra, since left-normed
/// brackets span). ambient_dim bounds the possible span dimension.
ClosureTrace bracket_closure(const std::vector<Matrix>& generators, int ambient_dim,
                             const Tolerance& tol = {});

/// Cross-check variant bracketing all pairs of the current span; quadratic
/// cost, intended for small n only.
ClosureTrace bracket_closure_full_pairs(const std::vector<Matrix>& generators,
                                        int ambient_dim, const Tolerance& tol = {});

struct TwoGenerationReport {
  int n = 0;
  bool gamma_applicable = false;  // false for n = 2 (no nonzero sum-free scalar)
  GammaConstruction construction;
  GammaVector scaled;
  GammaConditionReport conditions;
  ClosureTrace closure;
  bool reaches_full = false;

  // Staged reachability mirroring the generation proof.
  bool stage1_nodes_distinct = false;   // exact: 0 and the gamma differences
  double stage1_adpower_residual = 0.0; // ad^k X Y vs sum (g_i-g_j)^k A_ij, k <= 6
  int stage1_rank = 0;                  // numeric span check (n <= 4 only)
  int stage1_expected = 0;
  bool stage1_rank_checked = false;
  double stage2_residual = 0.0;         // [R_1, A_{1i}] = R_i
  int stage3_rank = 0;                  // independent H elements from [A_{1j}, A_{j1}]
  int stage3_expected = 0;

  bool pass = false;
};

TwoGenerationReport certify_two_generation(int n, const Tolerance& tol = {});

}  // namespace stochlie
