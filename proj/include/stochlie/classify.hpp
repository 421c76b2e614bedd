#pragma once

#include "stochlie/basis.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace stochlie {

/// Root functional alpha_ij on the Cartan subalgebra:
/// values[k-1] = alpha_ij(H_k) = gamma^k_i - gamma^k_j.
struct Root {
  int i = 0;
  int j = 0;
  Vector values;  // length n-2
};

struct RootSystem {
  int n = 0;
  std::vector<Root> roots;        // ordered pairs (i,j), i != j, lexicographic
  std::vector<int> simple;        // indices into roots: alpha_{i,i+1}, i = 1..n-2
  Eigen::MatrixXi cartan_matrix;  // (n-2) x (n-2)

  int root_index(int i, int j) const;
  double inner(int a, int b) const;  // <alpha_a, alpha_b> by root list index
};

RootSystem compute_roots(const StochasticBasis& basis);

/// Integer coefficients of a root in the simple-root basis. For alpha_ij they
/// are +1 on the consecutive block [i, j) when i < j, and -1 on [j, i) when
/// i > j.
Eigen::VectorXi simple_root_coefficients(const RootSystem& rs, int root_index);

struct DynkinDiagram {
  int node_count = 0;
  std::vector<std::tuple<int, int, int>> edges;  // (a, b, multiplicity), a < b
  std::string detected_type;                     // "A_k" or "unrecognized"

  std::string ascii(const RootSystem* rs = nullptr) const;
};

/// Builds the diagram on the simple roots and recognizes simple paths as
/// type A. Anything else is reported as "unrecognized" with the edge data
/// attached.
DynkinDiagram detect_dynkin(const RootSystem& rs);

/// Recomputes the simple roots from a generic ordering functional: positive
/// roots are those with f(alpha) > 0 and simple ones are the positive roots
/// that are not sums of two positive roots. Guards the fixed choice
/// Delta = {alpha_{i,i+1}} against convention bugs.
std::vector<int> simple_roots_from_functional(const RootSystem& rs,
                                              const Vector& functional,
                                              const Tolerance& tol = {});
Eigen::MatrixXi cartan_matrix_for(const RootSystem& rs,
                                  const std::vector<int>& simple);

struct RootSpaceReport {
  int n = 0;
  double max_residual = 0.0;         // [A_ij, H_k] vs (gamma_j^k - gamma_i^k) A_ij
  double cartan_abelian_residual = 0.0;  // [H, H']
  bool pass = false;
};

RootSpaceReport root_space_check(const StochasticBasis& basis,
                                 const Tolerance& tol = {});

/// M = (v0 | v1 | ... | v_{n-1}) and M1 = (v1 | ... | v_{n-1}).
struct RepresentationMaps {
  int n = 0;
  Matrix M;   // n x n, orthogonal
  Matrix M1;  // n x (n-1)
};

RepresentationMaps build_representation_maps(const SimplexFrame& frame);

/// Faithful representation of the Levi factor on R^{n-1}: x -> M1^T x M1.
/// Throws DomainError when x is outside the factor.
Matrix phi1(const RepresentationMaps& maps, const Matrix& x,
            const Tolerance& tol = {});

/// Full conjugation M^T x M; for x in the Levi factor the first row and
/// column vanish.
Matrix full_conjugation(const RepresentationMaps& maps, const Matrix& x,
                        const Tolerance& tol = {});

}  // namespace stochlie
