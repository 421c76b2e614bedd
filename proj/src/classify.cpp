#include "stochlie/classify.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace stochlie {

int RootSystem::root_index(int i, int j) const {
  const int m = n - 1;
  if (i < 1 || i > m || j < 1 || j > m || i == j)
    throw DomainError("root_index: invalid pair");
  return (i - 1) * (m - 1) + (j - 1) - (j > i ? 1 : 0);
}

double RootSystem::inner(int a, int b) const {
  return roots.at(a).values.dot(roots.at(b).values);
}

RootSystem compute_roots(const StochasticBasis& basis) {
  const int n = basis.n;
  if (n < 3)
    throw DomainError("compute_roots: trivial Levi factor for n = 2, no roots");

  RootSystem rs;
  rs.n = n;
  const Matrix& g = basis.gamma.cols;  // rows indexed by ell, columns by k
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      Root r;
      r.i = i;
      r.j = j;
      r.values = (g.row(i - 1) - g.row(j - 1)).transpose();
      rs.roots.push_back(std::move(r));
    }

  for (int i = 1; i <= n - 2; ++i) rs.simple.push_back(rs.root_index(i, i + 1));

  const int k = n - 2;
  rs.cartan_matrix.resize(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const double num = 2.0 * rs.inner(rs.simple[a], rs.simple[b]);
      const double den = rs.inner(rs.simple[a], rs.simple[a]);
      const double value = num / den;
      const double rounded = std::round(value);
      if (std::abs(value - rounded) > 1e-6)
        throw ConsistencyError("compute_roots: Cartan entry " + std::to_string(value) +
                               " is not integral");
      rs.cartan_matrix(a, b) = static_cast<int>(rounded);
    }
  return rs;
}

Eigen::VectorXi simple_root_coefficients(const RootSystem& rs, int root_index) {
  const int k = static_cast<int>(rs.simple.size());
  Matrix delta(rs.roots.at(root_index).values.size(), k);
  for (int a = 0; a < k; ++a) delta.col(a) = rs.roots[rs.simple[a]].values;
  const Vector coeffs =
      delta.colPivHouseholderQr().solve(rs.roots[root_index].values);
  Eigen::VectorXi out(k);
  for (int a = 0; a < k; ++a) {
    const double rounded = std::round(coeffs[a]);
    if (std::abs(coeffs[a] - rounded) > 1e-6)
      throw ConsistencyError("simple_root_coefficients: non-integer coefficient");
    out[a] = static_cast<int>(rounded);
  }
  return out;
}

DynkinDiagram detect_dynkin(const RootSystem& rs) {
  const int k = static_cast<int>(rs.simple.size());
  DynkinDiagram d;
  d.node_count = k;

  std::vector<int> degree(k, 0);
  std::vector<std::vector<int>> adj(k);
  bool only_single_edges = true;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const int mult = rs.cartan_matrix(a, b) * rs.cartan_matrix(b, a);
      if (mult > 0) {
        d.edges.emplace_back(a, b, mult);
        ++degree[a];
        ++degree[b];
        adj[a].push_back(b);
        adj[b].push_back(a);
        if (mult != 1) only_single_edges = false;
      }
    }

  // Type A = connected simple path: k-1 single edges, no node of degree > 2.
  bool path = only_single_edges &&
              static_cast<int>(d.edges.size()) == k - 1 &&
              std::all_of(degree.begin(), degree.end(), [](int x) { return x <= 2; });
  if (path && k > 0) {
    std::vector<bool> seen(k, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      ++reached;
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    path = reached == k;
  }

  d.detected_type = (path && k >= 1) ? "A_" + std::to_string(k) : "unrecognized";
  return d;
}

std::string DynkinDiagram::ascii(const RootSystem* rs) const {
  if (node_count == 0) return "(empty diagram)";
  // Order nodes along the path when possible; fall back to index order.
  std::vector<int> order;
  if (detected_type != "unrecognized") {
    std::vector<std::vector<int>> adj(node_count);
    for (const auto& [a, b, mult] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    int start = 0;
    for (int i = 0; i < node_count; ++i)
      if (adj[i].size() <= 1) {
        start = i;
        break;
      }
    std::vector<bool> seen(node_count, false);
    int u = start;
    while (true) {
      order.push_back(u);
      seen[u] = true;
      int next = -1;
      for (int w : adj[u])
        if (!seen[w]) next = w;
      if (next < 0) break;
      u = next;
    }
  }
  if (static_cast<int>(order.size()) != node_count) {
    order.clear();
    for (int i = 0; i < node_count; ++i) order.push_back(i);
  }

  std::ostringstream top, bottom;
  for (std::size_t p = 0; p < order.size(); ++p) {
    std::string label = "a" + std::to_string(order[p] + 1);
    if (rs) {
      const Root& r = rs->roots[rs->simple[order[p]]];
      label = "a" + std::to_string(r.i) + std::to_string(r.j);
    }
    top << 'o';
    bottom << label;
    if (p + 1 < order.size()) {
      const std::string link(std::max<std::size_t>(label.size() + 1, 4) - 1, '-');
      top << link;
      bottom << ' ';
      for (std::size_t c = label.size() + 1; c < link.size() + 1; ++c) bottom << ' ';
    }
  }
  return top.str() + "\n" + bottom.str();
}

std::vector<int> simple_roots_from_functional(const RootSystem& rs,
                                              const Vector& functional,
                                              const Tolerance& tol) {
  if (functional.size() != rs.roots.front().values.size())
    throw ShapeError("simple_roots_from_functional: wrong functional dimension");
  std::vector<int> positive;
  for (std::size_t r = 0; r < rs.roots.size(); ++r) {
    const double value = functional.dot(rs.roots[r].values);
    if (std::abs(value) <= tol.abs_eps)
      throw DegeneracyError("simple_roots_from_functional: functional vanishes on a root",
                            static_cast<int>(r));
    if (value > 0) positive.push_back(static_cast<int>(r));
  }
  std::vector<int> simple;
  for (int r : positive) {
    bool decomposable = false;
    for (int a : positive) {
      for (int b : positive) {
        const Vector sum = rs.roots[a].values + rs.roots[b].values;
        if ((sum - rs.roots[r].values).norm() < 1e-8) {
          decomposable = true;
          break;
        }
      }
      if (decomposable) break;
    }
    if (!decomposable) simple.push_back(r);
  }
  return simple;
}

Eigen::MatrixXi cartan_matrix_for(const RootSystem& rs,
                                  const std::vector<int>& simple) {
  const int k = static_cast<int>(simple.size());
  Eigen::MatrixXi c(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const double value =
          2.0 * rs.inner(simple[a], simple[b]) / rs.inner(simple[a], simple[a]);
      const double rounded = std::round(value);
      if (std::abs(value - rounded) > 1e-6)
        throw ConsistencyError("cartan_matrix_for: non-integer Cartan entry");
      c(a, b) = static_cast<int>(rounded);
    }
  return c;
}

RootSpaceReport root_space_check(const StochasticBasis& basis, const Tolerance& tol) {
  const int n = basis.n;
  if (n < 3)
    throw DomainError("root_space_check: trivial Levi factor for n = 2");
  RootSpaceReport report;
  report.n = n;
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j) {
      if (i == j) continue;
      for (int k = 1; k <= n - 2; ++k) {
        const double coeff = basis.gamma.entry(j, k) - basis.gamma.entry(i, k);
        const Matrix br = commutator(basis.A(i, j), basis.H(k));
        report.max_residual =
            std::max(report.max_residual, (br - coeff * basis.A(i, j)).norm());
      }
    }
  for (int a = 1; a <= n - 2; ++a)
    for (int b = 1; b <= n - 2; ++b)
      report.cartan_abelian_residual =
          std::max(report.cartan_abelian_residual,
                   commutator(basis.H(a), basis.H(b)).norm());
  report.pass = report.max_residual < tol.abs_eps &&
                report.cartan_abelian_residual < tol.abs_eps;
  return report;
}

RepresentationMaps build_representation_maps(const SimplexFrame& frame) {
  RepresentationMaps maps;
  maps.n = frame.n;
  maps.M.resize(frame.n, frame.n);
  maps.M.col(0) = frame.v0;
  for (int i = 1; i <= frame.n - 1; ++i) maps.M.col(i) = frame.vk(i);
  maps.M1 = maps.M.rightCols(frame.n - 1);
  return maps;
}

namespace {

void require_levi_member(const Matrix& x, const RepresentationMaps& maps,
                         const Tolerance& tol, const char* what) {
  if (x.rows() != maps.n || x.cols() != maps.n)
    throw ShapeError(std::string(what) + ": wrong matrix size");
  const double scale = std::max(1.0, x.norm());
  if (levi_membership_residual(x) > tol.abs_eps * scale)
    throw DomainError(std::string(what) +
                      ": matrix has a nonzero component outside the Levi factor");
}

}  // namespace

Matrix phi1(const RepresentationMaps& maps, const Matrix& x, const Tolerance& tol) {
  require_levi_member(x, maps, tol, "phi1");
  return maps.M1.transpose() * x * maps.M1;
}

Matrix full_conjugation(const RepresentationMaps& maps, const Matrix& x,
                        const Tolerance& tol) {
  require_levi_member(x, maps, tol, "full_conjugation");
  return maps.M.transpose() * x * maps.M;
}

}  // namespace stochlie
