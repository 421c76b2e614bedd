#include "stochlie/core.hpp"

#include <cmath>
#include <sstream>

namespace stochlie {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw ShapeError(std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected square");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                     "x" + std::to_string(b.cols()) + " differ");
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

Matrix dyadic(const Vector& a, const Vector& b) {
  require_finite(a, "dyadic");
  require_finite(b, "dyadic");
  return a * b.transpose();
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  return a.cwiseProduct(b).sum();
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   const Tolerance& tol) {
  std::vector<Vector> out;
  if (vectors.empty()) return out;
  const Eigen::Index dim = vectors.front().size();
  out.reserve(vectors.size());
  for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
    const Vector& raw = vectors[idx];
    if (raw.size() != dim)
      throw ShapeError("orthonormalize: vector " + std::to_string(idx) +
                       " has dimension " + std::to_string(raw.size()) +
                       ", expected " + std::to_string(dim));
    require_finite(raw, "orthonormalize");
    Vector v = raw;
    const double norm0 = v.norm();
    // Two projection passes keep orthogonality near machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : out) v -= b.dot(v) * b;
    const double r = v.norm();
    if (r <= tol.abs_eps + tol.rel_eps * norm0)
      throw DegeneracyError("orthonormalize: vector " + std::to_string(idx) +
                                " is dependent on its predecessors",
                            static_cast<int>(idx));
    out.push_back(v / r);
  }
  return out;
}

namespace {

int rank_of_rows(const Matrix& stacked, const Tolerance& tol) {
  if (stacked.rows() == 0 || stacked.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked.transpose());
  qr.setThreshold(tol.abs_eps);
  return static_cast<int>(qr.rank());
}

}  // namespace

int span_dimension(const std::vector<Matrix>& mats, const Tolerance& tol) {
  if (mats.empty()) return 0;
  const Eigen::Index r = mats.front().rows(), c = mats.front().cols();
  Matrix stacked(static_cast<Eigen::Index>(mats.size()), r * c);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != r || mats[k].cols() != c)
      throw ShapeError("span_dimension: matrix " + std::to_string(k) +
                       " has a different shape");
    require_finite(mats[k], "span_dimension");
    stacked.row(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const Eigen::RowVectorXd>(mats[k].data(), r * c);
  }
  return rank_of_rows(stacked, tol);
}

int span_dimension(const std::vector<Vector>& vecs, const Tolerance& tol) {
  if (vecs.empty()) return 0;
  const Eigen::Index d = vecs.front().size();
  Matrix stacked(static_cast<Eigen::Index>(vecs.size()), d);
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    if (vecs[k].size() != d)
      throw ShapeError("span_dimension: vector " + std::to_string(k) +
                       " has a different dimension");
    require_finite(vecs[k], "span_dimension");
    stacked.row(static_cast<Eigen::Index>(k)) = vecs[k].transpose();
  }
  return rank_of_rows(stacked, tol);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_fraction_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace stochlie
