#include "stochlie/structure.hpp"

#include <cmath>

namespace stochlie {

namespace {

void bump(std::map<std::string, double>& residuals, const std::string& key,
          double value) {
  auto [it, inserted] = residuals.try_emplace(key, value);
  if (!inserted && value > it->second) it->second = value;
}

}  // namespace

TableReport verify_multiplication_table(const StochasticBasis& basis,
                                        const Tolerance& tol) {
  const int n = basis.n;
  const Matrix& Z = basis.Z();
  TableReport report;
  report.n = n;
  auto& res = report.family_residuals;

  const double lambda = -1.0 / std::sqrt(static_cast<double>(n - 1));
  const double lambda_alt = -1.0 / static_cast<double>(n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    const Matrix br = commutator(Z, basis.R(i));
    bump(res, "[Z,R]", (br - lambda * basis.R(i)).norm());
    report.zr_alternate_constant_residual =
        std::max(report.zr_alternate_constant_residual,
                 (br - lambda_alt * basis.R(i)).norm());
  }

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      bump(res, "[Z,A]", commutator(Z, basis.A(i, j)).norm());
    }
  for (int k = 1; k <= n - 2; ++k)
    bump(res, "[Z,H]", commutator(Z, basis.H(k)).norm());

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      bump(res, "[R,R]", commutator(basis.R(i), basis.R(j)).norm());

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      for (int k = 1; k <= n - 1; ++k) {
        if (j == k) continue;
        const Matrix br = commutator(basis.R(i), basis.A(j, k));
        const Matrix expected = (i == j) ? basis.R(k) : Matrix::Zero(n, n);
        bump(res, "[R,A]", (br - expected).norm());
      }

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 2; ++j) {
      const Matrix br = commutator(basis.R(i), basis.H(j));
      bump(res, "[R,H]", (br - basis.gamma.entry(i, j) * basis.R(i)).norm());
    }

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      for (int k = 1; k <= n - 1; ++k)
        for (int l = 1; l <= n - 1; ++l) {
          if (k == l) continue;
          const Matrix br = commutator(basis.A(i, j), basis.A(k, l));
          Matrix expected = Matrix::Zero(n, n);
          if (i == l && j == k) {
            for (int r = 1; r <= n - 2; ++r)
              expected += (basis.gamma.entry(i, r) - basis.gamma.entry(j, r)) *
                          basis.H(r);
          } else if (i != l && j == k) {
            expected = basis.A(i, l);
          } else if (i == l && j != k) {
            expected = -basis.A(k, j);
          }
          bump(res, "[A,A]", (br - expected).norm());
        }
    }

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      for (int k = 1; k <= n - 2; ++k) {
        const Matrix br = commutator(basis.A(i, j), basis.H(k));
        const double coeff = basis.gamma.entry(j, k) - basis.gamma.entry(i, k);
        bump(res, "[A,H]", (br - coeff * basis.A(i, j)).norm());
      }
    }

  for (int i = 1; i <= n - 2; ++i)
    for (int j = 1; j <= n - 2; ++j)
      bump(res, "[H,H]", commutator(basis.H(i), basis.H(j)).norm());

  for (const auto& [key, value] : res)
    report.max_residual = std::max(report.max_residual, value);
  report.pass = report.max_residual < tol.abs_eps;
  return report;
}

StructureConstants structure_constants(const StochasticBasis& basis) {
  const int dim = basis.dimension();
  StructureConstants sc;
  sc.n = basis.n;
  sc.labels.reserve(dim);
  for (const auto& e : basis.elements) sc.labels.push_back(e.label);
  sc.c.assign(dim, Matrix::Zero(dim, dim));

  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < a; ++b) {
      const Matrix br = commutator(basis.elements[a].matrix, basis.elements[b].matrix);
      const Vector coords = basis.coordinates(br);
      sc.c[a].row(b) = coords.transpose();
      sc.c[b].row(a) = -coords.transpose();
      const double residual = (br - basis.from_coordinates(coords)).norm();
      sc.closure_residual = std::max(sc.closure_residual, residual);
    }

  if (sc.closure_residual > 1e-9)
    throw ConsistencyError("structure_constants: bracket closure residual " +
                           std::to_string(sc.closure_residual));
  return sc;
}

AdjointMatrix adjoint(const StochasticBasis& basis, const Matrix& x,
                      const std::string& label, const Tolerance& tol) {
  if (x.rows() != basis.n || x.cols() != basis.n)
    throw ShapeError("adjoint: wrong matrix size");
  const double scale = std::max(1.0, x.norm());
  if (algebra_membership_residual(x) > tol.abs_eps * scale)
    throw DomainError("adjoint: x * ones != 0, not in the algebra");
  if (basis.decomposition_residual(x) > tol.abs_eps * scale)
    throw DomainError("adjoint: x lies outside the basis span");

  const int dim = basis.dimension();
  AdjointMatrix ad;
  ad.element_label = label;
  ad.matrix.resize(dim, dim);
  for (int b = 0; b < dim; ++b)
    ad.matrix.col(b) = basis.coordinates(commutator(x, basis.elements[b].matrix));
  return ad;
}

namespace {

// ad(x) on Levi-factor coordinates only (the factor is a subalgebra, so the
// restriction is well-defined for x inside it).
Matrix levi_adjoint(const StochasticBasis& basis, const Matrix& x) {
  const int dim_l = basis.a_count() + basis.h_count();
  const int off = basis.levi_offset();
  Matrix ad(dim_l, dim_l);
  for (int b = 0; b < dim_l; ++b) {
    const Vector coords =
        basis.coordinates(commutator(x, basis.elements[off + b].matrix));
    ad.col(b) = coords.segment(off, dim_l);
  }
  return ad;
}

}  // namespace

KillingGram killing_form_levi(const StochasticBasis& basis) {
  const int n = basis.n;
  KillingGram kg;
  kg.n = n;
  if (n == 2) {
    kg.trivial = true;
    kg.gram.resize(0, 0);
    kg.predicted.resize(0, 0);
    return kg;
  }

  const int dim_l = basis.a_count() + basis.h_count();
  const int off = basis.levi_offset();
  kg.labels.reserve(dim_l);
  for (int a = 0; a < dim_l; ++a) kg.labels.push_back(basis.elements[off + a].label);

  std::vector<Matrix> ads;
  ads.reserve(dim_l);
  for (int a = 0; a < dim_l; ++a)
    ads.push_back(levi_adjoint(basis, basis.elements[off + a].matrix));

  kg.gram.resize(dim_l, dim_l);
  for (int a = 0; a < dim_l; ++a)
    for (int b = 0; b <= a; ++b) {
      const double value = (ads[a] * ads[b]).trace();
      kg.gram(a, b) = value;
      kg.gram(b, a) = value;
    }

  kg.predicted = Matrix::Zero(dim_l, dim_l);
  const double v = 2.0 * (n - 1);
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      const int a = basis.index_A(i, j) - off;
      const int b = basis.index_A(j, i) - off;
      kg.predicted(a, b) = v;
    }
  for (int k = 1; k <= n - 2; ++k) {
    const int a = basis.index_H(k) - off;
    kg.predicted(a, a) = v;
  }
  return kg;
}

Matrix killing_gram_full(const StochasticBasis& basis) {
  const int dim = basis.dimension();
  std::vector<Matrix> ads;
  ads.reserve(dim);
  for (int a = 0; a < dim; ++a)
    ads.push_back(adjoint(basis, basis.elements[a].matrix,
                          basis.elements[a].label)
                      .matrix);
  Matrix gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b <= a; ++b) {
      const double value = (ads[a] * ads[b]).trace();
      gram(a, b) = value;
      gram(b, a) = value;
    }
  return gram;
}

SemisimplicityCertificate verify_semisimplicity(const KillingGram& gram,
                                                const Tolerance& tol) {
  (void)tol;
  SemisimplicityCertificate cert;
  if (gram.trivial) {
    cert.vacuous = true;
    cert.semisimple = true;  // the zero algebra, vacuously
    cert.predicted_determinant_magnitude = 1.0;
    cert.determinant = 1.0;
    return cert;
  }
  const int d = static_cast<int>(gram.gram.rows());
  Eigen::JacobiSVD<Matrix> svd(gram.gram);
  cert.min_singular_value = svd.singularValues().minCoeff();
  cert.max_singular_value = svd.singularValues().maxCoeff();
  cert.determinant = gram.gram.determinant();
  cert.predicted_determinant_magnitude =
      std::pow(2.0 * (gram.n - 1), static_cast<double>(d));
  cert.semisimple = cert.min_singular_value > 1e-6 * cert.max_singular_value;
  return cert;
}

}  // namespace stochlie
