#pragma once

#include "stochlie/core.hpp"

#include <string>
#include <vector>

namespace stochlie {

/// Helmert-type orthonormal basis of the sum-zero hyperplane of R^dim.
/// Vector k (1-based) has k leading entries 1/sqrt(k(k+1)), then
/// -k/sqrt(k(k+1)), then zeros. Returns dim-1 vectors.
std::vector<Vector> helmert_basis(int dim);

/// v0 = (1/sqrt(n)) * ones together with an orthonormal basis v_1..v_{n-1}
/// of the hyperplane of sum-zero vectors in R^n.
struct SimplexFrame {
  int n = 0;
  Vector v0;
  std::vector<Vector> v;  // v[k-1] = v_k

  const Vector& vk(int k) const;  // 1-based
};

/// Columns gamma^1..gamma^{n-2}: an orthonormal basis of the sum-zero
/// hyperplane of R^{n-1}. Empty (zero columns) when n = 2.
struct GammaMatrix {
  int n = 0;
  Matrix cols;  // (n-1) x (n-2)

  Vector column(int k) const;      // gamma^k, 1-based
  double entry(int ell, int k) const;  // gamma^k_ell, 1-based
  Matrix projector() const;        // Gamma Gamma^T
};

enum class ElementKind { Z, R, A, H };

const char* to_string(ElementKind kind);

struct BasisElement {
  ElementKind kind;
  int i = 0;  // R_i, A_ij, H_i (1-based); unused for Z
  int j = 0;  // A_ij only
  std::string label;
  Matrix matrix;
};

/// The labeled orthonormal basis {Z, R_i, A_ij, H_k} of the algebra of
/// zero-row-sum matrices, in the fixed order Z, R_1.., A_(lex).., H_1...
struct StochasticBasis {
  int n = 0;
  SimplexFrame frame;
  GammaMatrix gamma;
  std::vector<BasisElement> elements;

  int dimension() const { return n * (n - 1); }
  int a_count() const { return (n - 1) * (n - 2); }
  int h_count() const { return n - 2; }

  int index_Z() const { return 0; }
  int index_R(int i) const;        // 1 <= i <= n-1
  int index_A(int i, int j) const; // ordered pair, i != j, 1-based
  int index_H(int k) const;        // 1 <= k <= n-2
  int levi_offset() const { return n; }  // first A index; Z and R precede

  const Matrix& Z() const;
  const Matrix& R(int i) const;
  const Matrix& A(int i, int j) const;
  const Matrix& H(int k) const;

  /// Coordinates under the Frobenius inner product (valid because the basis
  /// is orthonormal).
  Vector coordinates(const Matrix& x) const;
  Matrix from_coordinates(const Vector& coords) const;
  /// ||x - reconstruction||_F; zero iff x lies in the algebra.
  double decomposition_residual(const Matrix& x) const;
};

/// Max |entry| of x * ones: zero iff x is tangent to the stochastic group.
double algebra_membership_residual(const Matrix& x);

/// Max of row-sum, column-sum and trace magnitudes: zero iff x lies in the
/// Levi factor (traceless, zero row and column sums).
double levi_membership_residual(const Matrix& x);

SimplexFrame build_frame(int n);
GammaMatrix build_gamma_matrix(int n);

/// Basis from an arbitrary valid frame pair (used for convention-independence
/// checks); build_basis(n) uses the Helmert frames.
StochasticBasis build_basis(const SimplexFrame& frame, const GammaMatrix& gamma);
StochasticBasis build_basis(int n);

/// The radical generators of the earlier literature:
/// Rhat_i = E_i(n) - E_n(n) for i = 1..n-1, and Zhat = Id - J_n/n.
std::vector<Matrix> build_legacy_radical_generators(int n);

}  // namespace stochlie
