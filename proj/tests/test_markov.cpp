#include <doctest.h>

#include "stochlie/expm.hpp"
#include "stochlie/markov.hpp"

#include <cmath>

using namespace stochlie;

TEST_SUITE("markov") {

TEST_CASE("matrix classification") {
  CHECK(classify_matrix(Matrix::Identity(3, 3)) == MatrixClass::S_plus);

  Matrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  CHECK(classify_matrix(half) == MatrixClass::S0_plus);  // singular transition

  Matrix group(2, 2);
  group << 2.0, -1.0, -1.0, 2.0;  // row sums 1, det 3, negative entries
  CHECK(classify_matrix(group) == MatrixClass::S_group);

  Matrix junk(2, 2);
  junk << 1.0, 1.0, 0.0, 1.0;
  CHECK(classify_matrix(junk) == MatrixClass::none);

  CHECK_THROWS_AS(classify_matrix(Matrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("transition validation clauses") {
  Matrix negative(2, 2);
  negative << 1.1, -0.1, 0.5, 0.5;
  const ValidationResult r1 = validate_transition(negative);
  CHECK(!r1.ok);
  CHECK(r1.clause == "nonnegativity");
  CHECK_THROWS_AS(make_transition(negative), DomainError);

  Matrix badsum(2, 2);
  badsum << 0.6, 0.6, 0.5, 0.5;
  const ValidationResult r2 = validate_transition(badsum);
  CHECK(!r2.ok);
  CHECK(r2.clause == "row_sums");

  Matrix good(2, 2);
  good << 0.3, 0.7, 0.4, 0.6;
  CHECK(validate_transition(good).ok);
  CHECK_NOTHROW(make_transition(good));
}

TEST_CASE("generator validation clauses") {
  Matrix cone(2, 2);
  cone << -1.0, 1.0, 2.0, -2.0;
  CHECK(validate_generator(cone).ok);

  Matrix offneg(2, 2);
  offneg << 1.0, -1.0, 0.5, -0.5;
  CHECK(validate_generator(offneg).clause == "offdiagonal_nonnegativity");

  Matrix badsum(2, 2);
  badsum << -1.0, 2.0, 0.5, -0.5;
  CHECK(validate_generator(badsum).clause == "row_sums");
}

TEST_CASE("semigroup of powers satisfies both orders") {
  SeededRng rng(5);
  const Matrix q = random_transition_matrix(3, rng);
  TransitionFamily family;
  family.times = {0.0, 1.0, 2.0, 3.0};
  Matrix acc = Matrix::Identity(3, 3);
  for (int s = 0; s < 4; ++s) family.matrices[{s, s}] = Matrix::Identity(3, 3);
  for (int s = 0; s < 4; ++s) {
    Matrix power = Matrix::Identity(3, 3);
    for (int t = s + 1; t < 4; ++t) {
      power = power * q;
      family.matrices[{s, t}] = power;
    }
  }
  const SemigroupReport report = check_semigroup(family);
  CHECK(report.triples_checked == 4);
  CHECK(report.max_composition_residual < 1e-12);
  CHECK(report.satisfied_order == "both");  // powers of one matrix commute
  CHECK(report.max_diagonal_residual < 1e-15);
  CHECK(report.pass);
  CHECK(report.flagged.empty());
}

TEST_CASE("semigroup written order is distinguished by a noncommuting family") {
  SeededRng rng(6);
  const Matrix a = random_transition_matrix(3, rng);
  const Matrix b = random_transition_matrix(3, rng);
  REQUIRE((a * b - b * a).cwiseAbs().maxCoeff() > 1e-3);

  TransitionFamily family;
  family.times = {0.0, 1.0, 2.0};
  family.matrices[{0, 1}] = a;
  family.matrices[{1, 2}] = b;
  family.matrices[{0, 2}] = b * a;  // written composition order
  const SemigroupReport report = check_semigroup(family);
  CHECK(report.max_composition_residual < 1e-14);
  CHECK(report.max_opposite_order_residual > 1e-3);
  CHECK(report.satisfied_order == "composed");
  CHECK(report.pass);
}

TEST_CASE("semigroup flags a corrupted entry") {
  SeededRng rng(7);
  const Matrix q = random_transition_matrix(3, rng);
  TransitionFamily family;
  family.times = {0.0, 1.0, 2.0};
  family.matrices[{0, 1}] = q;
  family.matrices[{1, 2}] = q;
  Matrix corrupted = q * q;
  corrupted(0, 1) += 0.1;
  family.matrices[{0, 2}] = corrupted;
  const SemigroupReport report = check_semigroup(family);
  CHECK(!report.pass);
  REQUIRE(report.flagged.size() == 1);
  CHECK(std::get<0>(report.flagged[0]) == 0.0);
  CHECK(std::get<1>(report.flagged[0]) == 1.0);
  CHECK(std::get<2>(report.flagged[0]) == 2.0);
}

TEST_CASE("semigroup single interval is vacuous with a coverage warning") {
  TransitionFamily family;
  family.times = {0.0, 1.0};
  family.matrices[{0, 1}] = Matrix::Identity(2, 2);
  const SemigroupReport report = check_semigroup(family);
  CHECK(report.triples_checked == 0);
  CHECK(report.coverage_warning);
  CHECK(report.satisfied_order == "vacuous");
  CHECK(report.pass);
}

TEST_CASE("expm basics") {
  CHECK((expm(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-15);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = -2.0;
  const Matrix e = expm(diag);
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) < 1e-16);

  Matrix nilpotent = Matrix::Zero(2, 2);
  nilpotent(0, 1) = 3.0;
  CHECK((expm(nilpotent) - (Matrix::Identity(2, 2) + nilpotent)).norm() < 1e-14);

  SeededRng rng(8);
  const Matrix a = random_algebra_element(4, rng);
  CHECK((expm(a) * expm(-a) - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("flow invariance closed form") {
  GeneratorCone zero{2, Matrix::Zero(2, 2)};
  const FlowReport r0 = flow_invariance(zero, {0.0, 1.0, 10.0});
  CHECK(r0.pass);
  CHECK(r0.min_entry >= 0.0);

  Matrix a(2, 2);
  a << -1.0, 1.0, 1.0, -1.0;
  const GeneratorCone cone = make_generator(a);
  const std::vector<double> grid{0.1, 0.5, 1.0, 2.0};
  const FlowReport report = flow_invariance(cone, grid);
  CHECK(report.pass);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    const Matrix e = expm(t * a);
    const double p = (1.0 + std::exp(-2.0 * t)) / 2.0;
    CHECK(e(0, 0) == doctest::Approx(p).epsilon(1e-12));
    CHECK(e(0, 1) == doctest::Approx(1.0 - p).epsilon(1e-12));
    CHECK(e(1, 0) == doctest::Approx(1.0 - p).epsilon(1e-12));
    CHECK(e(1, 1) == doctest::Approx(p).epsilon(1e-12));
  }

  Matrix bad(2, 2);
  bad << 1.0, -1.0, 0.5, -0.5;
  CHECK_THROWS_AS(flow_invariance(GeneratorCone{2, bad}, {1.0}),
                  DomainError);  // rejected by make_generator
  CHECK_THROWS_AS(make_generator(bad), DomainError);
}

TEST_CASE("flow invariance rejects cone violations early") {
  Matrix bad(2, 2);
  bad << 1.0, -1.0, 0.5, -0.5;
  CHECK_THROWS_AS(flow_invariance(make_generator(bad), {1.0}), DomainError);
}

TEST_CASE("cone to group property") {
  for (int n = 2; n <= 6; ++n) {
    SeededRng rng(100 + n);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix a = random_cone_element(n, rng);
      // Tangency: the cone sits inside the algebra.
      CHECK((a * Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-12);
      const double t = 10.0 * rng.uniform();
      const Matrix e = expm(t * a);
      CHECK(validate_transition(e).ok);
      CHECK(e.minCoeff() >= -1e-12);
      CHECK((e.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
      // For short times the determinant is numerically visible too.
      const Matrix e_small = expm(0.2 * a);
      CHECK(classify_matrix(e_small) == MatrixClass::S_plus);
    }
    const GeneratorCone cone{n, random_cone_element(n, rng)};
    const FlowReport flow = flow_invariance(cone, {0.1, 1.0, 10.0});
    CHECK(flow.pass);
    for (const MatrixClass label : flow.labels) CHECK(label == MatrixClass::S_plus);
    for (double ld : flow.log_determinants) CHECK(ld < 0.0);
  }
}

TEST_CASE("interior witness survives small perturbations") {
  const double c = 1.0;
  for (int n = 2; n <= 6; ++n) {
    Matrix center = Matrix::Constant(n, n, c / (n - 1.0));
    center.diagonal().setConstant(-c);
    CHECK(validate_generator(center).ok);
    SeededRng rng(200 + n);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix direction = random_algebra_element(n, rng);
      direction *= (0.99 * c / (2.0 * (n - 1.0))) / direction.norm();
      CHECK(validate_generator(center + direction).ok);
    }
  }
}

TEST_CASE("simulation of a deterministic permutation chain") {
  Matrix cycle = Matrix::Zero(3, 3);
  cycle(0, 1) = 1.0;
  cycle(1, 2) = 1.0;
  cycle(2, 0) = 1.0;
  Vector initial = Vector::Zero(3);
  initial[0] = 1.0;
  const SimulationReport report =
      simulate_chain(make_transition(cycle), initial, 6, 500, 11);
  for (int k = 0; k < 6; ++k) {
    // Every visited row reproduces the permutation row exactly.
    for (int i = 0; i < 3; ++i) {
      if (report.counts[k].row(i).sum() == 0.0) continue;
      CHECK((report.frequencies[k].row(i) - cycle.row(i)).cwiseAbs().maxCoeff() ==
            doctest::Approx(0.0));
    }
  }
  // All mass stays on the orbit: law after k steps is a point mass.
  for (int k = 0; k <= 6; ++k) CHECK(report.law[k].maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("simulation matches binomial error bounds") {
  Matrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  Vector initial(2);
  initial << 1.0, 0.0;
  const long paths = 100000;
  const SimulationReport report =
      simulate_chain(make_transition(half), initial, 3, paths, 42);
  const double bound = 3.0 * std::sqrt(0.25 / static_cast<double>(paths));
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 2; ++i) {
      if (report.counts[k].row(i).sum() == 0.0) continue;
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(report.frequencies[k](i, j) - 0.5) < bound);
    }
}

TEST_CASE("simulation law follows the Chapman-Kolmogorov powers") {
  SeededRng rng(12);
  const Matrix p = random_transition_matrix(3, rng);
  Vector initial(3);
  initial << 0.5, 0.3, 0.2;
  const int steps = 4;
  const long paths = 100000;
  const SimulationReport report =
      simulate_chain(make_transition(p), initial, steps, paths, 1234);
  Vector expected = initial;
  for (int k = 1; k <= steps; ++k) {
    expected = (expected.transpose() * p).transpose();
    for (int j = 0; j < 3; ++j) {
      const double sigma =
          std::sqrt(std::max(expected[j] * (1.0 - expected[j]), 1e-12) /
                    static_cast<double>(paths));
      CHECK(std::abs(report.law[k][j] - expected[j]) < 3.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("simulation is bit-identical for equal seeds") {
  SeededRng rng(13);
  const Matrix p = random_transition_matrix(4, rng);
  Vector initial = Vector::Constant(4, 0.25);
  const SimulationReport a = simulate_chain(make_transition(p), initial, 5, 2000, 777);
  const SimulationReport b = simulate_chain(make_transition(p), initial, 5, 2000, 777);
  const SimulationReport c = simulate_chain(make_transition(p), initial, 5, 2000, 778);
  for (int k = 0; k < 5; ++k) {
    CHECK((a.counts[k] - b.counts[k]).cwiseAbs().maxCoeff() == 0.0);
  }
  bool any_difference = false;
  for (int k = 0; k < 5; ++k)
    if ((a.counts[k] - c.counts[k]).cwiseAbs().maxCoeff() > 0.0) any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("simulation rejects invalid distributions") {
  Matrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  Vector bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(simulate_chain(make_transition(half), bad, 2, 10, 1), DomainError);
  Vector negative(2);
  negative << 1.5, -0.5;
  CHECK_THROWS_AS(simulate_chain(make_transition(half), negative, 2, 10, 1),
                  DomainError);
}

TEST_CASE("dual action identities") {
  SeededRng rng(14);
  const Matrix p = random_transition_matrix(4, rng);
  Vector prob(4);
  prob << 0.1, 0.2, 0.3, 0.4;
  Vector f(4);
  for (int i = 0; i < 4; ++i) f[i] = rng.gaussian();

  const DualActionReport r1 = dual_action_check(p, prob, f);
  CHECK(r1.associativity_residual < 1e-12);
  CHECK(r1.mass_residual < 1e-12);

  // Signed measure with zero total mass keeps zero mass.
  Vector signed_p(4);
  signed_p << 1.0, -1.0, 2.0, -2.0;
  const DualActionReport r2 = dual_action_check(p, signed_p, f);
  CHECK(r2.mass_residual < 1e-12);

  CHECK_THROWS_AS(dual_action_check(p, Vector::Zero(3), f), ShapeError);
}

}  // TEST_SUITE
