#pragma once

#include "stochlie/core.hpp"
#include "stochlie/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace stochlie {

/// Validation limits for probabilistic inputs: looser than the algebra
/// tolerances since matrices may be user-ingested data.
struct ValidationLimits {
  double entry_floor = -1e-12;  // entries may dip this far below zero
  double row_sum_eps = 1e-9;    // allowed deviation of row sums from target
};

enum class MatrixClass { S0_plus, S_plus, S_group, none };

const char* to_string(MatrixClass c);

/// Most specific class: transition matrices split into singular (S0_plus) and
/// nonsingular (S_plus); row sums one with negative entries but invertible is
/// the group (S_group); anything else is none.
MatrixClass classify_matrix(const Matrix& p, const ValidationLimits& limits = {});

struct ValidationResult {
  bool ok = true;
  std::string clause;  // first failing clause when !ok
  double min_entry = 0.0;
  double max_row_sum_dev = 0.0;
};

ValidationResult validate_transition(const Matrix& p, const ValidationLimits& limits = {});
ValidationResult validate_generator(const Matrix& a, const ValidationLimits& limits = {});

struct TransitionMatrix {
  int n = 0;
  Matrix P;
};

struct GeneratorCone {
  int n = 0;
  Matrix A;
};

/// Validated constructors; throw DomainError naming the failing clause.
TransitionMatrix make_transition(const Matrix& p, const ValidationLimits& limits = {});
GeneratorCone make_generator(const Matrix& a, const ValidationLimits& limits = {});

/// Two-parameter family P(s, t) stored against an ordered time grid.
struct TransitionFamily {
  std::vector<double> times;
  std::map<std::pair<int, int>, Matrix> matrices;  // key: (time index s, time index t)
};

struct SemigroupReport {
  int triples_checked = 0;
  double max_composition_residual = 0.0;  // P(s,t) vs P(u,t) P(s,u), written order
  double max_opposite_order_residual = 0.0;  // P(s,t) vs P(s,u) P(u,t)
  double max_diagonal_residual = 0.0;        // P(t,t) vs identity
  std::vector<std::tuple<double, double, double>> flagged;  // (s, u, t) over tolerance
  bool coverage_warning = false;  // no complete triple available
  std::string satisfied_order;    // "composed", "opposite", "both", "none"
  bool pass = false;
};

/// Checks every stored triple s < u < t in the written composition order and
/// reports the opposite order alongside, since the family convention differs
/// between sources.
SemigroupReport check_semigroup(const TransitionFamily& family, const Tolerance& tol = {});

struct FlowReport {
  std::vector<double> t_grid;
  std::vector<MatrixClass> labels;
  std::vector<double> log_determinants;  // t * tr(A), the nonsingularity witness
  double min_entry = 0.0;
  double max_row_sum_dev = 0.0;
  bool pass = false;
};

/// exp(tA) over the grid must stay a nonsingular transition matrix.
/// Nonsingularity holds by construction (det exp(tA) = exp(t tr A) > 0, the
/// reported log-determinant); for large t the determinant underflows any
/// numeric rank test, so entrywise and row-sum checks are what get measured.
FlowReport flow_invariance(const GeneratorCone& cone, const std::vector<double>& t_grid,
                           const ValidationLimits& limits = {});

struct SimulationReport {
  int n = 0;
  int steps = 0;
  long paths = 0;
  std::uint64_t seed = 0;
  std::vector<Matrix> counts;       // per step: counts[k](i,j), transitions k -> k+1
  std::vector<Matrix> frequencies;  // row-normalized counts (all-zero rows stay zero)
  std::vector<Vector> law;          // empirical distribution after step k, k = 0..steps
};

/// Seeded Monte-Carlo chain simulation; per-path substreams derived from the
/// seed, so results are reproducible and independent of evaluation order.
SimulationReport simulate_chain(const TransitionMatrix& p, const Vector& initial,
                                int steps, long paths, std::uint64_t seed);

struct DualActionReport {
  double associativity_residual = 0.0;  // (pP)x vs p(Px)
  double mass_residual = 0.0;           // (pP)1 vs p1
};

DualActionReport dual_action_check(const Matrix& p, const Vector& measure,
                                   const Vector& function);

// Seeded samplers used by the diagnostics and the test suites.
Matrix random_algebra_element(int n, SeededRng& rng);      // row sums zero
Matrix random_cone_element(int n, SeededRng& rng);         // + nonneg off-diagonal
Matrix random_transition_matrix(int n, SeededRng& rng);
Matrix random_group_element(int n, SeededRng& rng);        // exp of algebra element

}  // namespace stochlie
