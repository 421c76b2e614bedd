#pragma once

#include "stochlie/basis.hpp"

#include <map>
#include <string>
#include <vector>

namespace stochlie {

/// Residuals of the bracket table, one entry per identity family.
///
/// The [Z,R] family is checked against the eigenvalue -1/sqrt(n-1): it is
/// forced by Z v_i = (1/sqrt(n-1)) v_i together with R_i = v0 (x) v_i, and it
/// is what the matrices actually satisfy. The residual against the constant
/// -1/(n-1) is reported alongside as a diagnostic (the two agree only at
/// n = 2).
struct TableReport {
  int n = 0;
  std::map<std::string, double> family_residuals;
  double max_residual = 0.0;
  double zr_alternate_constant_residual = 0.0;  // against -1/(n-1)
  bool pass = false;
};

TableReport verify_multiplication_table(const StochasticBasis& basis,
                                        const Tolerance& tol = {});

/// Coordinates of the bracket: [x_a, x_b] = sum_k c[a](b, k) x_k.
struct StructureConstants {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<Matrix> c;  // c[a] is dim x dim; row b, column k
  double closure_residual = 0.0;

  int dimension() const { return static_cast<int>(labels.size()); }
  double value(int a, int b, int k) const { return c[a](b, k); }
};

/// Computes c[a][b][k] = <[x_a, x_b], x_k>. Throws ConsistencyError when the
/// reconstructed brackets miss the direct ones by more than 1e-9.
StructureConstants structure_constants(const StochasticBasis& basis);

struct AdjointMatrix {
  std::string element_label;
  Matrix matrix;  // dim x dim, acting on basis coordinates
};

/// Matrix of ad(x) on basis coordinates. Requires x in the algebra
/// (x * ones = 0) and inside the basis span.
AdjointMatrix adjoint(const StochasticBasis& basis, const Matrix& x,
                      const std::string& label = "x", const Tolerance& tol = {});

/// Gram matrix of the Killing form of the Levi factor, with ad restricted to
/// the factor itself. `predicted` holds the closed forms: zero blocks between
/// the A and H families, 2(n-1) on the H diagonal, and 2(n-1) exactly on the
/// (A_ij, A_ji) pairs.
struct KillingGram {
  int n = 0;
  bool trivial = false;  // n = 2: the factor is {0}
  std::vector<std::string> labels;
  Matrix gram;
  Matrix predicted;
};

KillingGram killing_form_levi(const StochasticBasis& basis);

/// Trace form Tr(ad x ad y) with ad taken over the whole algebra. Degenerate
/// along the radical; used as the independent radical witness.
Matrix killing_gram_full(const StochasticBasis& basis);

struct SemisimplicityCertificate {
  bool semisimple = false;
  bool vacuous = false;  // trivial factor (n = 2)
  double determinant = 0.0;
  double predicted_determinant_magnitude = 0.0;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
};

/// Cartan criterion: nondegenerate iff min singular value clears the
/// threshold 1e-6 * max singular value.
SemisimplicityCertificate verify_semisimplicity(const KillingGram& gram,
                                                const Tolerance& tol = {});

}  // namespace stochlie
