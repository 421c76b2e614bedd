#include "stochlie/markov.hpp"

#include "stochlie/expm.hpp"

#include <algorithm>
#include <cmath>

namespace stochlie {

const char* to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::S0_plus: return "S0_plus";
    case MatrixClass::S_plus: return "S_plus";
    case MatrixClass::S_group: return "S_group";
    case MatrixClass::none: return "none";
  }
  return "?";
}

namespace {

bool rows_sum_to(const Matrix& m, double target, double eps, double* max_dev = nullptr) {
  const Vector sums = m.rowwise().sum();
  const double dev = (sums.array() - target).abs().maxCoeff();
  if (max_dev) *max_dev = dev;
  return dev <= eps;
}

bool is_nonsingular(const Matrix& m) {
  Eigen::FullPivLU<Matrix> lu(m);
  return lu.isInvertible();
}

}  // namespace

MatrixClass classify_matrix(const Matrix& p, const ValidationLimits& limits) {
  require_square(p, "classify_matrix");
  require_finite(p, "classify_matrix");
  const bool row_sums_one = rows_sum_to(p, 1.0, limits.row_sum_eps);
  const bool nonnegative = p.minCoeff() >= limits.entry_floor;
  if (row_sums_one && nonnegative)
    return is_nonsingular(p) ? MatrixClass::S_plus : MatrixClass::S0_plus;
  if (row_sums_one && is_nonsingular(p)) return MatrixClass::S_group;
  return MatrixClass::none;
}

ValidationResult validate_transition(const Matrix& p, const ValidationLimits& limits) {
  require_square(p, "validate_transition");
  ValidationResult result;
  result.min_entry = p.size() > 0 ? p.minCoeff() : 0.0;
  rows_sum_to(p, 1.0, limits.row_sum_eps, &result.max_row_sum_dev);
  if (!p.allFinite()) {
    result.ok = false;
    result.clause = "finite_entries";
  } else if (result.min_entry < limits.entry_floor) {
    result.ok = false;
    result.clause = "nonnegativity";
  } else if (result.max_row_sum_dev > limits.row_sum_eps) {
    result.ok = false;
    result.clause = "row_sums";
  }
  return result;
}

ValidationResult validate_generator(const Matrix& a, const ValidationLimits& limits) {
  require_square(a, "validate_generator");
  ValidationResult result;
  double off_min = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) off_min = std::min(off_min, a(i, j));
  result.min_entry = off_min;
  rows_sum_to(a, 0.0, limits.row_sum_eps, &result.max_row_sum_dev);
  if (!a.allFinite()) {
    result.ok = false;
    result.clause = "finite_entries";
  } else if (off_min < limits.entry_floor) {
    result.ok = false;
    result.clause = "offdiagonal_nonnegativity";
  } else if (result.max_row_sum_dev > limits.row_sum_eps) {
    result.ok = false;
    result.clause = "row_sums";
  }
  return result;
}

TransitionMatrix make_transition(const Matrix& p, const ValidationLimits& limits) {
  const ValidationResult check = validate_transition(p, limits);
  if (!check.ok)
    throw DomainError("transition matrix rejected: clause " + check.clause);
  return {static_cast<int>(p.rows()), p};
}

GeneratorCone make_generator(const Matrix& a, const ValidationLimits& limits) {
  const ValidationResult check = validate_generator(a, limits);
  if (!check.ok)
    throw DomainError("generator rejected: clause " + check.clause);
  return {static_cast<int>(a.rows()), a};
}

SemigroupReport check_semigroup(const TransitionFamily& family, const Tolerance& tol) {
  SemigroupReport report;
  const int nt = static_cast<int>(family.times.size());

  for (int t = 0; t < nt; ++t) {
    const auto it = family.matrices.find({t, t});
    if (it != family.matrices.end()) {
      const Matrix& p = it->second;
      report.max_diagonal_residual = std::max(
          report.max_diagonal_residual,
          (p - Matrix::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff());
    }
  }

  const double bound = std::max(tol.abs_eps, 1e-9);
  for (int s = 0; s < nt; ++s)
    for (int u = s + 1; u < nt; ++u)
      for (int t = u + 1; t < nt; ++t) {
        const auto pst = family.matrices.find({s, t});
        const auto psu = family.matrices.find({s, u});
        const auto put = family.matrices.find({u, t});
        if (pst == family.matrices.end() || psu == family.matrices.end() ||
            put == family.matrices.end())
          continue;
        ++report.triples_checked;
        const double composed =
            (pst->second - put->second * psu->second).cwiseAbs().maxCoeff();
        const double opposite =
            (pst->second - psu->second * put->second).cwiseAbs().maxCoeff();
        report.max_composition_residual =
            std::max(report.max_composition_residual, composed);
        report.max_opposite_order_residual =
            std::max(report.max_opposite_order_residual, opposite);
        if (composed > bound)
          report.flagged.emplace_back(family.times[s], family.times[u],
                                      family.times[t]);
      }

  report.coverage_warning = report.triples_checked == 0;
  const bool composed_ok = report.max_composition_residual <= bound;
  const bool opposite_ok = report.max_opposite_order_residual <= bound;
  if (report.coverage_warning)
    report.satisfied_order = "vacuous";
  else if (composed_ok && opposite_ok)
    report.satisfied_order = "both";
  else if (composed_ok)
    report.satisfied_order = "composed";
  else if (opposite_ok)
    report.satisfied_order = "opposite";
  else
    report.satisfied_order = "none";
  report.pass = composed_ok && report.max_diagonal_residual <= bound;
  return report;
}

FlowReport flow_invariance(const GeneratorCone& cone, const std::vector<double>& t_grid,
                           const ValidationLimits& limits) {
  const ValidationResult check = validate_generator(cone.A, limits);
  if (!check.ok)
    throw DomainError("flow_invariance: cone violation, clause " + check.clause);
  for (double t : t_grid)
    if (t < 0.0) throw DomainError("flow_invariance: negative time");

  FlowReport report;
  report.t_grid = t_grid;
  report.min_entry = 1.0;
  bool all_in_group = true;
  for (double t : t_grid) {
    const Matrix e = expm(t * cone.A);
    report.log_determinants.push_back(t * cone.A.trace());
    // Transition checks are numeric; the exponential is nonsingular by the
    // determinant identity, regardless of how close exp(tA) sits to the
    // stationary projection.
    const MatrixClass label = validate_transition(e, limits).ok
                                  ? MatrixClass::S_plus
                                  : classify_matrix(e, limits);
    report.labels.push_back(label);
    report.min_entry = std::min(report.min_entry, e.minCoeff());
    double dev = 0.0;
    rows_sum_to(e, 1.0, 0.0, &dev);
    report.max_row_sum_dev = std::max(report.max_row_sum_dev, dev);
    if (label != MatrixClass::S_plus) all_in_group = false;
  }
  report.pass = all_in_group && report.min_entry >= limits.entry_floor;
  return report;
}

namespace {

int sample_index(const Vector& distribution, double u) {
  double acc = 0.0;
  const int n = static_cast<int>(distribution.size());
  for (int i = 0; i < n; ++i) {
    acc += std::max(0.0, distribution[i]);
    if (u < acc) return i;
  }
  return n - 1;  // guard against cumulative rounding
}

}  // namespace

SimulationReport simulate_chain(const TransitionMatrix& p, const Vector& initial,
                                int steps, long paths, std::uint64_t seed) {
  const int n = p.n;
  if (initial.size() != n)
    throw DomainError("simulate_chain: invalid distribution size");
  if (initial.minCoeff() < -1e-12 || std::abs(initial.sum() - 1.0) > 1e-9)
    throw DomainError("simulate_chain: invalid distribution");
  if (steps < 0 || paths <= 0)
    throw DomainError("simulate_chain: steps must be >= 0 and paths > 0");

  SimulationReport report;
  report.n = n;
  report.steps = steps;
  report.paths = paths;
  report.seed = seed;
  report.counts.assign(steps, Matrix::Zero(n, n));
  report.law.assign(steps + 1, Vector::Zero(n));

  for (long path = 0; path < paths; ++path) {
    SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(path)));
    int state = sample_index(initial, rng.uniform());
    report.law[0][state] += 1.0;
    for (int k = 0; k < steps; ++k) {
      const int next = sample_index(p.P.row(state).transpose(), rng.uniform());
      report.counts[k](state, next) += 1.0;
      state = next;
      report.law[k + 1][state] += 1.0;
    }
  }

  for (Vector& l : report.law) l /= static_cast<double>(paths);
  report.frequencies.reserve(steps);
  for (const Matrix& c : report.counts) {
    Matrix f = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      const double total = c.row(i).sum();
      if (total > 0.0) f.row(i) = c.row(i) / total;
    }
    report.frequencies.push_back(std::move(f));
  }
  return report;
}

DualActionReport dual_action_check(const Matrix& p, const Vector& measure,
                                   const Vector& function) {
  require_square(p, "dual_action_check");
  if (measure.size() != p.rows() || function.size() != p.rows())
    throw ShapeError("dual_action_check: dimension mismatch");
  DualActionReport report;
  const Vector pushed = p.transpose() * measure;  // row-vector action pP
  report.associativity_residual =
      std::abs(pushed.dot(function) - measure.dot(p * function));
  report.mass_residual = std::abs(pushed.sum() - measure.sum());
  return report;
}

Matrix random_algebra_element(int n, SeededRng& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  const Vector row_means = g.rowwise().mean();
  g.colwise() -= row_means;
  return g;
}

Matrix random_cone_element(int n, SeededRng& rng) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      a(i, j) = rng.uniform();
      off += a(i, j);
    }
    a(i, i) = -off;
  }
  return a;
}

Matrix random_transition_matrix(int n, SeededRng& rng) {
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      // Keep every entry strictly positive so rows normalize cleanly.
      p(i, j) = rng.uniform() + 1e-3;
      total += p(i, j);
    }
    p.row(i) /= total;
  }
  return p;
}

Matrix random_group_element(int n, SeededRng& rng) {
  return expm(random_algebra_element(n, rng));
}

}  // namespace stochlie
