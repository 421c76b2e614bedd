#include <doctest.h>

#include "stochlie/classify.hpp"
#include "stochlie/rng.hpp"
#include "stochlie/structure.hpp"

#include <cmath>

using namespace stochlie;

namespace {

Vector random_levi_coords(const StochasticBasis& basis, SeededRng& rng) {
  Vector coords = Vector::Zero(basis.dimension());
  for (int a = basis.levi_offset(); a < basis.dimension(); ++a)
    coords[a] = rng.gaussian();
  return coords;
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("root inner products") {
  for (int n = 3; n <= 8; ++n) {
    const RootSystem rs = compute_roots(build_basis(n));
    CAPTURE(n);
    CHECK(static_cast<int>(rs.roots.size()) == (n - 1) * (n - 2));
    CHECK(rs.inner(rs.root_index(1, 2), rs.root_index(1, 2)) ==
          doctest::Approx(2.0).epsilon(1e-10));
    if (n >= 4)
      CHECK(rs.inner(rs.root_index(1, 2), rs.root_index(2, 3)) ==
            doctest::Approx(-1.0).epsilon(1e-10));
    if (n >= 5)
      CHECK(std::abs(rs.inner(rs.root_index(1, 2), rs.root_index(3, 4))) < 1e-10);

    // General identity: <alpha_ij, alpha_lm> = (e_i - e_j) . (e_l - e_m).
    for (const Root& a : rs.roots)
      for (const Root& b : rs.roots) {
        double expected = 0.0;
        expected += (a.i == b.i) + (a.j == b.j);
        expected -= (a.i == b.j) + (a.j == b.i);
        CHECK(a.values.dot(b.values) == doctest::Approx(expected).epsilon(1e-9));
      }
  }
  CHECK_THROWS_AS(compute_roots(build_basis(2)), DomainError);
}

TEST_CASE("roots are gamma row differences and antisymmetric") {
  const StochasticBasis basis = build_basis(5);
  const RootSystem rs = compute_roots(basis);
  for (const Root& r : rs.roots) {
    const Vector expected =
        (basis.gamma.cols.row(r.i - 1) - basis.gamma.cols.row(r.j - 1)).transpose();
    CHECK((r.values - expected).cwiseAbs().maxCoeff() < 1e-13);
    const Root& opposite = rs.roots[rs.root_index(r.j, r.i)];
    CHECK((r.values + opposite.values).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("simple root expansion has one sign") {
  for (int n = 3; n <= 8; ++n) {
    const RootSystem rs = compute_roots(build_basis(n));
    for (std::size_t r = 0; r < rs.roots.size(); ++r) {
      const Eigen::VectorXi coeffs =
          simple_root_coefficients(rs, static_cast<int>(r));
      const Root& root = rs.roots[r];
      // alpha_ij = sum of consecutive simple roots over [min(i,j), max(i,j)).
      for (int k = 0; k < coeffs.size(); ++k) {
        int expected = 0;
        if (root.i < root.j && root.i <= k + 1 && k + 1 < root.j) expected = 1;
        if (root.j < root.i && root.j <= k + 1 && k + 1 < root.i) expected = -1;
        CHECK(coeffs[k] == expected);
      }
    }
  }
}

TEST_CASE("cartan matrix is the A-series pattern") {
  for (int n = 3; n <= 10; ++n) {
    const RootSystem rs = compute_roots(build_basis(n));
    const int k = n - 2;
    REQUIRE(rs.cartan_matrix.rows() == k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const int expected = a == b ? 2 : (std::abs(a - b) == 1 ? -1 : 0);
        CHECK(rs.cartan_matrix(a, b) == expected);
      }
  }
}

TEST_CASE("dynkin detection") {
  CHECK(detect_dynkin(compute_roots(build_basis(3))).detected_type == "A_1");
  const DynkinDiagram d5 = detect_dynkin(compute_roots(build_basis(5)));
  CHECK(d5.detected_type == "A_3");
  CHECK(d5.node_count == 3);
  CHECK(d5.edges.size() == 2);

  // Permuting the simple roots must not change the detected type.
  RootSystem rs = compute_roots(build_basis(6));
  std::swap(rs.simple[0], rs.simple[3]);
  std::swap(rs.simple[1], rs.simple[2]);
  rs.cartan_matrix = cartan_matrix_for(rs, rs.simple);
  CHECK(detect_dynkin(rs).detected_type == "A_4");

  // A branched diagram is not type A.
  RootSystem fake;
  fake.n = 6;
  fake.roots.resize(12);
  for (Root& r : fake.roots) r.values = Vector::Zero(4);
  fake.simple = {0, 1, 2, 3};
  fake.cartan_matrix.resize(4, 4);
  fake.cartan_matrix << 2, -1, -1, -1,
                        -1, 2, 0, 0,
                        -1, 0, 2, 0,
                        -1, 0, 0, 2;
  CHECK(detect_dynkin(fake).detected_type == "unrecognized");
}

TEST_CASE("dynkin ascii rendering") {
  const RootSystem rs = compute_roots(build_basis(5));
  const DynkinDiagram d = detect_dynkin(rs);
  const std::string art = d.ascii(&rs);
  CHECK(art.find("o---") != std::string::npos);
  CHECK(art.find("a12") != std::string::npos);
  CHECK(art.find("a34") != std::string::npos);
}

TEST_CASE("root space check") {
  const RootSpaceReport report = root_space_check(build_basis(3));
  CHECK(report.max_residual < 1e-12);
  CHECK(report.cartan_abelian_residual < 1e-13);
  CHECK(report.pass);
  for (int n = 4; n <= 8; ++n) CHECK(root_space_check(build_basis(n)).pass);
}

TEST_CASE("representation maps") {
  const StochasticBasis basis = build_basis(5);
  const RepresentationMaps maps = build_representation_maps(basis.frame);
  CHECK((maps.M.transpose() * maps.M - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((maps.M1.transpose() * maps.M1 - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("phi1 on basis elements") {
  const StochasticBasis basis = build_basis(5);
  const RepresentationMaps maps = build_representation_maps(basis.frame);

  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      Matrix expected = Matrix::Zero(4, 4);
      expected(i - 1, j - 1) = 1.0;
      CHECK((phi1(maps, basis.A(i, j)) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

  for (int k = 1; k <= 3; ++k) {
    const Matrix image = phi1(maps, basis.H(k));
    const Matrix expected = basis.gamma.column(k).asDiagonal();
    CHECK((image - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(image.trace()) < 1e-12);
  }

  CHECK(phi1(maps, Matrix::Zero(5, 5)).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(phi1(maps, basis.Z()), DomainError);   // nonzero trace
  CHECK_THROWS_AS(phi1(maps, basis.R(1)), DomainError);  // nonzero column sums
}

TEST_CASE("full conjugation block form") {
  const StochasticBasis basis = build_basis(5);
  const RepresentationMaps maps = build_representation_maps(basis.frame);

  const Matrix conj = full_conjugation(maps, basis.A(1, 2));
  CHECK(std::abs(conj(0, 0)) < 1e-13);
  CHECK(conj.row(0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(conj.col(0).cwiseAbs().maxCoeff() < 1e-12);

  SeededRng rng(99);
  Vector coords = Vector::Zero(basis.dimension());
  for (int a = basis.levi_offset(); a < basis.dimension(); ++a)
    coords[a] = rng.gaussian();
  const Matrix x = basis.from_coordinates(coords);
  const Matrix cx = full_conjugation(maps, x);
  CHECK(cx.col(0).norm() < 1e-10);
  CHECK(cx.row(0).norm() < 1e-10);

  const Matrix ch = full_conjugation(maps, basis.H(1));
  const Matrix block = ch.bottomRightCorner(4, 4);
  CHECK((block - Matrix(basis.gamma.column(1).asDiagonal())).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("phi1 is a faithful homomorphism") {
  for (int n = 3; n <= 8; ++n) {
    const StochasticBasis basis = build_basis(n);
    const RepresentationMaps maps = build_representation_maps(basis.frame);
    SeededRng rng(2000 + n);
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix x = basis.from_coordinates(random_levi_coords(basis, rng));
      const Matrix y = basis.from_coordinates(random_levi_coords(basis, rng));
      const Matrix lhs = phi1(maps, commutator(x, y));
      const Matrix rhs = commutator(phi1(maps, x), phi1(maps, y));
      const double scale = 1.0 + x.norm() * y.norm();
      CAPTURE(n);
      CHECK((lhs - rhs).norm() < 1e-8 * scale);
    }

    // Faithfulness: the induced linear map has full rank dim(l).
    std::vector<Matrix> images;
    for (int a = basis.levi_offset(); a < basis.dimension(); ++a)
      images.push_back(phi1(maps, basis.elements[a].matrix));
    CHECK(span_dimension(images) == basis.a_count() + basis.h_count());

    // Image characterization: H goes to traceless diagonals, A to
    // zero-diagonal matrices.
    std::vector<Matrix> h_images, a_images;
    for (int k = 1; k <= n - 2; ++k) {
      const Matrix img = phi1(maps, basis.H(k));
      CHECK((img - Matrix(img.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
      h_images.push_back(img);
    }
    for (int i = 1; i <= n - 1; ++i)
      for (int j = 1; j <= n - 1; ++j) {
        if (i == j) continue;
        const Matrix img = phi1(maps, basis.A(i, j));
        CHECK(img.diagonal().cwiseAbs().maxCoeff() < 1e-12);
        a_images.push_back(img);
      }
    CHECK(span_dimension(h_images) == n - 2);
    CHECK(span_dimension(a_images) == (n - 1) * (n - 2));
  }
}

TEST_CASE("root decomposition fills the Levi factor") {
  for (int n = 3; n <= 8; ++n) {
    const StochasticBasis basis = build_basis(n);
    const int dim_l = basis.a_count() + basis.h_count();
    CHECK(basis.h_count() + static_cast<int>(compute_roots(basis).roots.size()) ==
          dim_l);
  }
}

TEST_CASE("intrinsic structure is frame independent") {
  // The named quantities (bracket table, Killing values, Dynkin type)
  // must not depend on which orthonormal frames got chosen.
  SeededRng rng(2024);
  for (int n : {3, 5}) {
    const SimplexFrame helmert = build_frame(n);
    Matrix g(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) g(i, j) = rng.gaussian();
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    SimplexFrame frame = helmert;
    for (int i = 0; i < n - 1; ++i) {
      Vector v = Vector::Zero(n);
      for (int j = 0; j < n - 1; ++j) v += q(j, i) * helmert.v[j];
      frame.v[i] = v;
    }

    GammaMatrix gamma = build_gamma_matrix(n);
    Matrix g2(n - 2, n - 2);
    for (int i = 0; i < n - 2; ++i)
      for (int j = 0; j < n - 2; ++j) g2(i, j) = rng.gaussian();
    const Matrix q2 = Eigen::HouseholderQR<Matrix>(g2).householderQ();
    gamma.cols = gamma.cols * q2;

    const StochasticBasis basis = build_basis(frame, gamma);
    CAPTURE(n);
    CHECK(verify_multiplication_table(basis).pass);
    const KillingGram kg = killing_form_levi(basis);
    CHECK((kg.gram - kg.predicted).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(detect_dynkin(compute_roots(basis)).detected_type ==
          "A_" + std::to_string(n - 2));
  }
}

TEST_CASE("simple roots from a generic functional agree") {
  for (int n = 4; n <= 8; ++n) {
    const RootSystem rs = compute_roots(build_basis(n));
    // Generic ordering functional with irrationally-spread entries.
    Vector f(n - 2);
    double value = 1.0;
    for (int k = 0; k < n - 2; ++k) {
      f[k] = value;
      value *= 1.0 + std::sqrt(2.0);
    }
    const std::vector<int> recomputed = simple_roots_from_functional(rs, f);
    REQUIRE(recomputed.size() == rs.simple.size());
    RootSystem alt = rs;
    alt.simple = recomputed;
    alt.cartan_matrix = cartan_matrix_for(rs, recomputed);
    CHECK(detect_dynkin(alt).detected_type == detect_dynkin(rs).detected_type);
  }
}

}  // TEST_SUITE
