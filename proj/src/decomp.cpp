#include "stochlie/decomp.hpp"

#include "stochlie/structure.hpp"

#include <cmath>

namespace stochlie {

bool LeviCertificate::pass(const Tolerance& tol) const {
  return ideal_residual < tol.abs_eps && subalgebra_residual < tol.abs_eps &&
         solvable() && direct_sum_rank == n * (n - 1);
}

namespace {

// Orthonormal basis of the span of the given coordinate vectors.
std::vector<Vector> orthonormal_span(const std::vector<Vector>& vecs,
                                     const Tolerance& tol) {
  std::vector<Vector> out;
  for (const Vector& v : vecs) {
    Vector w = v;
    const double norm0 = w.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : out) w -= b.dot(w) * b;
    if (w.norm() > std::max(tol.abs_eps, 1e-10 * norm0)) out.push_back(w / w.norm());
  }
  return out;
}

}  // namespace

LeviCertificate certify_levi(const StochasticBasis& basis, const Tolerance& tol) {
  const int n = basis.n;
  const int dim = basis.dimension();
  const int rad = n;  // Z and R_1..R_{n-1} lead the element order

  LeviCertificate cert;
  cert.n = n;
  for (int a = 0; a < rad; ++a) cert.radical_labels.push_back(basis.elements[a].label);
  for (int a = rad; a < dim; ++a) cert.levi_labels.push_back(basis.elements[a].label);

  for (int a = 0; a < dim; ++a)
    for (int r = 0; r < rad; ++r) {
      const Vector coords = basis.coordinates(
          commutator(basis.elements[a].matrix, basis.elements[r].matrix));
      cert.ideal_residual =
          std::max(cert.ideal_residual, coords.tail(dim - rad).norm());
    }

  for (int a = rad; a < dim; ++a)
    for (int b = rad; b < dim; ++b) {
      const Vector coords = basis.coordinates(
          commutator(basis.elements[a].matrix, basis.elements[b].matrix));
      cert.subalgebra_residual =
          std::max(cert.subalgebra_residual, coords.head(rad).norm());
    }

  // Derived series of the radical, by span dimension.
  std::vector<Vector> current;
  for (int r = 0; r < rad; ++r) {
    Vector e = Vector::Zero(dim);
    e[r] = 1.0;
    current.push_back(e);
  }
  cert.derived_series_dims.push_back(static_cast<int>(current.size()));
  while (!current.empty()) {
    std::vector<Vector> brackets;
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        const Matrix br = commutator(basis.from_coordinates(current[a]),
                                     basis.from_coordinates(current[b]));
        brackets.push_back(basis.coordinates(br));
      }
    std::vector<Vector> next = orthonormal_span(brackets, tol);
    cert.derived_series_dims.push_back(static_cast<int>(next.size()));
    if (next.size() >= current.size()) break;  // stalled: not solvable
    current = std::move(next);
  }

  std::vector<Matrix> mats;
  for (const auto& e : basis.elements) mats.push_back(e.matrix);
  cert.direct_sum_rank = span_dimension(mats, tol);
  return cert;
}

std::vector<Vector> radical_from_killing(const StochasticBasis& basis,
                                         const Tolerance& tol) {
  const int dim = basis.dimension();
  const Matrix gram = killing_gram_full(basis);

  // Coordinate basis of the derived algebra.
  std::vector<Vector> bracket_coords;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      bracket_coords.push_back(basis.coordinates(
          commutator(basis.elements[a].matrix, basis.elements[b].matrix)));
  const std::vector<Vector> derived = orthonormal_span(bracket_coords, tol);

  Matrix pairing(static_cast<Eigen::Index>(derived.size()), dim);
  for (std::size_t r = 0; r < derived.size(); ++r)
    pairing.row(static_cast<Eigen::Index>(r)) = (gram * derived[r]).transpose();

  Eigen::JacobiSVD<Matrix> svd(pairing, Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  const double max_sv = sv.size() > 0 ? sv.maxCoeff() : 0.0;
  const double cutoff = std::max(tol.abs_eps, 1e-8) * std::max(max_sv, 1.0);

  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv[k] > cutoff) ++rank;

  // Refuse to call the rank when kept and dropped values are within a factor
  // of ten of each other.
  if (rank > 0 && rank < sv.size()) {
    const double kept = sv[rank - 1];
    const double dropped = sv[rank];
    if (dropped > 0.0 && kept / dropped < 10.0)
      throw ConsistencyError("radical_from_killing: singular-value gap too small "
                             "to determine the radical dimension");
  }

  std::vector<Vector> kernel;
  for (Eigen::Index k = rank; k < svd.matrixV().cols(); ++k)
    kernel.push_back(svd.matrixV().col(k));
  // The pairing rows may not span all coordinates; make sure directions with
  // no constraint at all are included (JacobiSVD with full V already yields
  // an orthonormal completion, so nothing further is needed).
  return kernel;
}

Matrix AffineBlockForm::reassemble() const {
  Matrix out = Matrix::Zero(n, n);
  out.block(0, 1, 1, n - 1) = beta.transpose();
  out.block(1, 1, n - 1, n - 1) =
      levi_block + beta0_scaled() * Matrix::Identity(n - 1, n - 1);
  return out;
}

AffineBlockForm affine_block_form(const RepresentationMaps& maps, const Matrix& s,
                                  const Tolerance& tol) {
  const int n = maps.n;
  if (s.rows() != n || s.cols() != n)
    throw ShapeError("affine_block_form: wrong matrix size");
  const double scale = std::max(1.0, s.norm());
  if (algebra_membership_residual(s) > tol.abs_eps * scale)
    throw DomainError("affine_block_form: S * ones != 0, not in the algebra");

  const Matrix conj = maps.M.transpose() * s * maps.M;
  AffineBlockForm form;
  form.n = n;
  form.beta = conj.block(0, 1, 1, n - 1).transpose();
  const Matrix block = conj.block(1, 1, n - 1, n - 1);
  // The Levi part is traceless, so the trace isolates the Z coefficient.
  form.beta0 = block.trace() / std::sqrt(static_cast<double>(n - 1));
  form.levi_block =
      block - (form.beta0 / std::sqrt(static_cast<double>(n - 1))) *
                  Matrix::Identity(n - 1, n - 1);
  return form;
}

GroupConjugacyReport group_level_check(const RepresentationMaps& maps, const Matrix& p,
                                       const Tolerance& tol,
                                       const std::optional<Matrix>& q) {
  const int n = maps.n;
  if (p.rows() != n || p.cols() != n)
    throw ShapeError("group_level_check: wrong matrix size");
  const Vector ones = Vector::Ones(n);
  const double scale = std::max(1.0, p.norm());
  if ((p * ones - ones).cwiseAbs().maxCoeff() > tol.abs_eps * scale)
    throw DomainError("group_level_check: P * ones != ones");
  Eigen::FullPivLU<Matrix> lu(p);
  if (!lu.isInvertible())
    throw DomainError("group_level_check: P is singular");

  GroupConjugacyReport report;
  report.n = n;
  Vector e0 = Vector::Zero(n);
  e0[0] = 1.0;
  const Matrix conj_p = maps.M.transpose() * p * maps.M;
  report.first_column_residual = (conj_p.col(0) - e0).cwiseAbs().maxCoeff();

  const Matrix& other = q ? *q : p;
  if (other.rows() != n || other.cols() != n)
    throw ShapeError("group_level_check: wrong Q size");
  const Matrix conj_q = maps.M.transpose() * other * maps.M;
  const Matrix conj_pq = maps.M.transpose() * (p * other) * maps.M;
  report.multiplicativity_residual =
      (conj_pq - conj_p * conj_q).cwiseAbs().maxCoeff();

  const double bound = std::max(tol.abs_eps, 1e-9) * std::max(1.0, p.norm() * other.norm());
  report.pass = report.first_column_residual < bound &&
                report.multiplicativity_residual < bound;
  return report;
}

}  // namespace stochlie
