#include "stochlie/basis.hpp"

#include <cmath>

namespace stochlie {

std::vector<Vector> helmert_basis(int dim) {
  if (dim < 2) throw DomainError("helmert_basis: dim must be >= 2");
  std::vector<Vector> out;
  out.reserve(dim - 1);
  for (int k = 1; k < dim; ++k) {
    Vector v = Vector::Zero(dim);
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) v[i] = s;
    v[k] = -k * s;
    out.push_back(v);
  }
  return out;
}

const Vector& SimplexFrame::vk(int k) const {
  if (k < 1 || k > static_cast<int>(v.size()))
    throw DomainError("SimplexFrame: index " + std::to_string(k) + " out of range");
  return v[k - 1];
}

Vector GammaMatrix::column(int k) const {
  if (k < 1 || k > cols.cols())
    throw DomainError("GammaMatrix: column " + std::to_string(k) + " out of range");
  return cols.col(k - 1);
}

double GammaMatrix::entry(int ell, int k) const {
  if (ell < 1 || ell > cols.rows() || k < 1 || k > cols.cols())
    throw DomainError("GammaMatrix: entry index out of range");
  return cols(ell - 1, k - 1);
}

Matrix GammaMatrix::projector() const { return cols * cols.transpose(); }

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Z: return "Z";
    case ElementKind::R: return "R";
    case ElementKind::A: return "A";
    case ElementKind::H: return "H";
  }
  return "?";
}

int StochasticBasis::index_R(int i) const {
  if (i < 1 || i > n - 1) throw DomainError("index_R: i out of range");
  return i;
}

int StochasticBasis::index_A(int i, int j) const {
  if (i < 1 || i > n - 1 || j < 1 || j > n - 1 || i == j)
    throw DomainError("index_A: invalid pair");
  // Lexicographic over ordered pairs (i, j), i != j.
  const int within = (i - 1) * (n - 2) + (j - 1) - (j > i ? 1 : 0);
  return n + within;
}

int StochasticBasis::index_H(int k) const {
  if (k < 1 || k > n - 2) throw DomainError("index_H: k out of range");
  return n + a_count() + (k - 1);
}

const Matrix& StochasticBasis::Z() const { return elements[index_Z()].matrix; }
const Matrix& StochasticBasis::R(int i) const { return elements[index_R(i)].matrix; }
const Matrix& StochasticBasis::A(int i, int j) const {
  return elements[index_A(i, j)].matrix;
}
const Matrix& StochasticBasis::H(int k) const { return elements[index_H(k)].matrix; }

Vector StochasticBasis::coordinates(const Matrix& x) const {
  if (x.rows() != n || x.cols() != n)
    throw ShapeError("coordinates: expected " + std::to_string(n) + "x" +
                     std::to_string(n) + " matrix");
  Vector c(dimension());
  for (int a = 0; a < dimension(); ++a)
    c[a] = frobenius_inner(x, elements[a].matrix);
  return c;
}

Matrix StochasticBasis::from_coordinates(const Vector& coords) const {
  if (coords.size() != dimension())
    throw ShapeError("from_coordinates: expected " + std::to_string(dimension()) +
                     " coordinates");
  Matrix x = Matrix::Zero(n, n);
  for (int a = 0; a < dimension(); ++a) x += coords[a] * elements[a].matrix;
  return x;
}

double StochasticBasis::decomposition_residual(const Matrix& x) const {
  return (x - from_coordinates(coordinates(x))).norm();
}

double algebra_membership_residual(const Matrix& x) {
  require_square(x, "algebra_membership_residual");
  return (x * Vector::Ones(x.rows())).cwiseAbs().maxCoeff();
}

double levi_membership_residual(const Matrix& x) {
  require_square(x, "levi_membership_residual");
  const Vector ones = Vector::Ones(x.rows());
  const double row = (x * ones).cwiseAbs().maxCoeff();
  const double col = (x.transpose() * ones).cwiseAbs().maxCoeff();
  return std::max({row, col, std::abs(x.trace())});
}

SimplexFrame build_frame(int n) {
  if (n < 2) throw DomainError("build_frame: n must be >= 2");
  SimplexFrame frame;
  frame.n = n;
  frame.v0 = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  frame.v = helmert_basis(n);
  return frame;
}

GammaMatrix build_gamma_matrix(int n) {
  if (n < 3) throw DomainError("build_gamma_matrix: n must be >= 3");
  GammaMatrix gamma;
  gamma.n = n;
  gamma.cols.resize(n - 1, n - 2);
  const auto cols = helmert_basis(n - 1);
  for (int k = 0; k < n - 2; ++k) gamma.cols.col(k) = cols[k];
  return gamma;
}

StochasticBasis build_basis(const SimplexFrame& frame, const GammaMatrix& gamma) {
  const int n = frame.n;
  if (n < 2) throw DomainError("build_basis: n must be >= 2");
  if (static_cast<int>(frame.v.size()) != n - 1)
    throw ShapeError("build_basis: frame has wrong vector count");
  if (n >= 3 && (gamma.cols.rows() != n - 1 || gamma.cols.cols() != n - 2))
    throw ShapeError("build_basis: gamma matrix has wrong shape");

  StochasticBasis basis;
  basis.n = n;
  basis.frame = frame;
  basis.gamma = gamma;
  basis.elements.reserve(n * (n - 1));

  const Matrix proj = Matrix::Identity(n, n) - dyadic(frame.v0, frame.v0);
  basis.elements.push_back(
      {ElementKind::Z, 0, 0, "Z", proj / std::sqrt(static_cast<double>(n - 1))});

  for (int i = 1; i <= n - 1; ++i)
    basis.elements.push_back(
        {ElementKind::R, i, 0, "R" + std::to_string(i), dyadic(frame.v0, frame.vk(i))});

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      basis.elements.push_back({ElementKind::A, i, j,
                                "A(" + std::to_string(i) + "," + std::to_string(j) + ")",
                                dyadic(frame.vk(i), frame.vk(j))});
    }

  for (int k = 1; k <= n - 2; ++k) {
    Matrix h = Matrix::Zero(n, n);
    for (int ell = 1; ell <= n - 1; ++ell)
      h += gamma.entry(ell, k) * dyadic(frame.vk(ell), frame.vk(ell));
    basis.elements.push_back({ElementKind::H, k, 0, "H" + std::to_string(k), h});
  }

  return basis;
}

StochasticBasis build_basis(int n) {
  if (n < 2) throw DomainError("build_basis: n must be >= 2");
  GammaMatrix gamma;
  if (n >= 3) {
    gamma = build_gamma_matrix(n);
  } else {
    gamma.n = n;
    gamma.cols.resize(n - 1, 0);
  }
  return build_basis(build_frame(n), gamma);
}

std::vector<Matrix> build_legacy_radical_generators(int n) {
  if (n < 2) throw DomainError("build_legacy_radical_generators: n must be >= 2");
  std::vector<Matrix> out;
  out.reserve(n);
  Matrix en = Matrix::Zero(n, n);
  en.col(n - 1).setOnes();
  for (int i = 1; i <= n - 1; ++i) {
    Matrix ei = Matrix::Zero(n, n);
    ei.col(i - 1).setOnes();
    out.push_back(ei - en);
  }
  out.push_back(Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n));
  return out;
}

}  // namespace stochlie
