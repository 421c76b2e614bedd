#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace stochlie {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Exact rational scalar. Always stored reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

/// Absolute/relative tolerance pair used by all numeric checks.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-10;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rank deficiency detected where independence was required.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& msg, int index)
      : std::runtime_error(msg), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// Internal invariant violated (e.g. a residual out of tolerance).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);
void require_square(const Matrix& m, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

/// ab - ba for square matrices of equal size.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Rank-1 matrix a_i * b_j.
Matrix dyadic(const Vector& a, const Vector& b);

/// Tr(a b^T) = sum_ij a_ij b_ij.
double frobenius_inner(const Matrix& a, const Matrix& b);

/// Modified Gram-Schmidt with re-orthogonalization. Throws DegeneracyError
/// (carrying the offending index) when an input is dependent on its
/// predecessors to within tolerance.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors,
                                   const Tolerance& tol = {});

/// Numerical dimension of the span of a matrix family, via column-pivoted QR
/// with pivot threshold abs_eps * (largest pivot).
int span_dimension(const std::vector<Matrix>& mats, const Tolerance& tol = {});
int span_dimension(const std::vector<Vector>& vecs, const Tolerance& tol = {});

double to_double(const Rational& q);
std::string to_fraction_string(const Rational& q);

}  // namespace stochlie
