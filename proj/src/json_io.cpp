#include "stochlie/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stochlie {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_flat_json(const Matrix& m) {
  json flat = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return flat;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

namespace {

Matrix matrix_from_rows(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("matrix: expected a non-empty array of rows");
  const std::size_t ncols = rows.front().is_array() ? rows.front().size() : 0;
  if (ncols == 0) throw ParseError("matrix: rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != ncols)
      throw ParseError("matrix: row " + std::to_string(i) +
                       " has inconsistent length");
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!row[j].is_number())
        throw ParseError("matrix: entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ") is not a number");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (j.is_array()) return matrix_from_rows(j);
  if (j.is_object() && j.contains("rows")) {
    Matrix m = matrix_from_rows(j.at("rows"));
    if (j.contains("n")) {
      const auto n = j.at("n").get<Eigen::Index>();
      if (m.rows() != n || m.cols() != n)
        throw ParseError("matrix: declared n = " + std::to_string(n) +
                         " does not match row data");
    }
    return m;
  }
  throw ParseError("matrix: expected an array of rows or an object with \"rows\"");
}

Matrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        std::size_t used = 0;
        const double value = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(value);
      } catch (const std::exception&) {
        throw ParseError("csv: line " + std::to_string(lineno) + ", column " +
                         std::to_string(col) + ": not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("csv: line " + std::to_string(lineno) +
                       ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: empty input");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

namespace {

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

bool has_extension(const std::string& path, const char* ext) {
  const std::size_t len = std::string(ext).size();
  return path.size() >= len &&
         path.compare(path.size() - len, len, ext) == 0;
}

}  // namespace

Matrix matrix_from_file(const std::string& path) {
  if (has_extension(path, ".csv")) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return matrix_from_csv(in);
  }
  return matrix_from_json(parse_json_file(path));
}

Vector vector_from_file(const std::string& path) {
  const json j = parse_json_file(path);
  const json& arr = j.is_object() && j.contains("entries") ? j.at("entries") : j;
  if (!arr.is_array()) throw ParseError(path + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ParseError(path + ": entry " + std::to_string(i) + " is not a number");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

TransitionFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("times") || !j.contains("entries"))
    throw ParseError("family: expected object with \"times\" and \"entries\"");
  TransitionFamily family;
  for (const json& t : j.at("times")) {
    if (!t.is_number()) throw ParseError("family: time is not a number");
    family.times.push_back(t.get<double>());
  }
  if (!std::is_sorted(family.times.begin(), family.times.end()))
    throw ParseError("family: times must be sorted increasingly");

  auto time_index = [&](double value, const char* what) {
    for (std::size_t i = 0; i < family.times.size(); ++i)
      if (family.times[i] == value) return static_cast<int>(i);
    throw ParseError(std::string("family: ") + what + " = " + std::to_string(value) +
                     " is not on the time grid");
  };

  for (const json& entry : j.at("entries")) {
    if (!entry.is_object() || !entry.contains("s") || !entry.contains("t") ||
        !entry.contains("matrix"))
      throw ParseError("family: entry needs keys s, t, matrix");
    const int si = time_index(entry.at("s").get<double>(), "s");
    const int ti = time_index(entry.at("t").get<double>(), "t");
    if (si > ti) throw ParseError("family: entry has s > t");
    family.matrices[{si, ti}] = matrix_from_json(entry.at("matrix"));
  }
  return family;
}

TransitionFamily family_from_file(const std::string& path) {
  return family_from_json(parse_json_file(path));
}

json basis_to_json(const StochasticBasis& basis) {
  json j;
  j["n"] = basis.n;
  j["frame"] = {{"n", basis.frame.n}, {"v0", vector_to_json(basis.frame.v0)}};
  json vs = json::array();
  for (const Vector& v : basis.frame.v) vs.push_back(vector_to_json(v));
  j["frame"]["v"] = std::move(vs);
  j["gamma"] = {{"rows", basis.gamma.cols.rows()},
                {"cols", basis.gamma.cols.cols()},
                {"entries", matrix_to_flat_json(basis.gamma.cols)}};
  json elements = json::array();
  for (const BasisElement& e : basis.elements) {
    json indices = json::array();
    if (e.kind != ElementKind::Z) {
      indices.push_back(e.i);
      if (e.kind == ElementKind::A) indices.push_back(e.j);
    }
    elements.push_back({{"label", e.label},
                        {"kind", to_string(e.kind)},
                        {"indices", std::move(indices)},
                        {"matrix", matrix_to_flat_json(e.matrix)}});
  }
  j["elements"] = std::move(elements);
  return j;
}

json table_report_to_json(const TableReport& report) {
  json j;
  j["n"] = report.n;
  j["families"] = report.family_residuals;
  j["max_residual"] = report.max_residual;
  j["zr_alternate_constant_residual"] = report.zr_alternate_constant_residual;
  j["pass"] = report.pass;
  return j;
}

json structure_constants_to_json(const StructureConstants& sc) {
  json j;
  j["n"] = sc.n;
  j["labels"] = sc.labels;
  json nonzeros = json::array();
  const int dim = sc.dimension();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int k = 0; k < dim; ++k) {
        const double value = sc.value(a, b, k);
        if (std::abs(value) > 1e-12)
          nonzeros.push_back({{"a", a}, {"b", b}, {"c", k}, {"value", value}});
      }
  j["nonzeros"] = std::move(nonzeros);
  j["closure_residual"] = sc.closure_residual;
  return j;
}

json killing_to_json(const KillingGram& gram, const SemisimplicityCertificate& cert) {
  json j;
  j["n"] = gram.n;
  j["trivial"] = gram.trivial;
  j["labels"] = gram.labels;
  j["computed"] = matrix_to_json(gram.gram);
  j["predicted"] = matrix_to_json(gram.predicted);
  j["max_abs_deviation"] =
      gram.trivial ? 0.0 : (gram.gram - gram.predicted).cwiseAbs().maxCoeff();
  j["certificate"] = {{"semisimple", cert.semisimple},
                      {"vacuous", cert.vacuous},
                      {"determinant", cert.determinant},
                      {"predicted_determinant_magnitude",
                       cert.predicted_determinant_magnitude},
                      {"min_singular_value", cert.min_singular_value},
                      {"max_singular_value", cert.max_singular_value}};
  return j;
}

json root_system_to_json(const RootSystem& rs) {
  json j;
  j["n"] = rs.n;
  json roots = json::array();
  for (const Root& r : rs.roots)
    roots.push_back({{"i", r.i}, {"j", r.j}, {"values", vector_to_json(r.values)}});
  j["roots"] = std::move(roots);
  j["simple"] = rs.simple;
  json cartan = json::array();
  for (Eigen::Index a = 0; a < rs.cartan_matrix.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < rs.cartan_matrix.cols(); ++b)
      row.push_back(rs.cartan_matrix(a, b));
    cartan.push_back(std::move(row));
  }
  j["cartan_matrix"] = std::move(cartan);
  return j;
}

json dynkin_to_json(const DynkinDiagram& d) {
  json j;
  j["node_count"] = d.node_count;
  json edges = json::array();
  for (const auto& [a, b, mult] : d.edges)
    edges.push_back({{"a", a}, {"b", b}, {"multiplicity", mult}});
  j["edges"] = std::move(edges);
  j["detected_type"] = d.detected_type;
  return j;
}

json levi_to_json(const LeviCertificate& cert, int radical_oracle_dim,
                  bool radical_oracle_agrees, const Tolerance& tol) {
  json j;
  j["n"] = cert.n;
  j["radical_labels"] = cert.radical_labels;
  j["levi_labels"] = cert.levi_labels;
  j["clauses"] = {
      {"ideal",
       {{"residual", cert.ideal_residual}, {"pass", cert.ideal_residual < tol.abs_eps}}},
      {"levi_subalgebra",
       {{"residual", cert.subalgebra_residual},
        {"pass", cert.subalgebra_residual < tol.abs_eps}}},
      {"radical_solvable",
       {{"derived_series_dims", cert.derived_series_dims}, {"pass", cert.solvable()}}},
      {"direct_sum",
       {{"rank", cert.direct_sum_rank},
        {"pass", cert.direct_sum_rank == cert.n * (cert.n - 1)}}},
      {"radical_oracle",
       {{"dimension", radical_oracle_dim}, {"pass", radical_oracle_agrees}}}};
  j["pass"] = cert.pass(tol) && radical_oracle_agrees;
  return j;
}

json twogen_to_json(const TwoGenerationReport& report) {
  json j;
  j["n"] = report.n;
  j["gamma_applicable"] = report.gamma_applicable;
  json gamma = json::array();
  for (const Rational& q : report.scaled.entries)
    gamma.push_back(to_fraction_string(q));
  j["gamma"] = std::move(gamma);
  json eps = json::array();
  for (const Rational& q : report.construction.epsilon_choices)
    eps.push_back(to_fraction_string(q));
  j["epsilon_choices"] = std::move(eps);
  j["conditions"] = {{"zero_sum", report.conditions.zero_sum},
                     {"nonzero_entries", report.conditions.nonzero_entries},
                     {"distinct_entries", report.conditions.distinct_entries},
                     {"distinct_differences", report.conditions.distinct_differences},
                     {"violation", report.conditions.violation}};
  j["dims_per_round"] = report.closure.dims;
  j["final_dim"] = report.closure.final_dim;
  j["bracket_count"] = report.closure.bracket_count;
  j["stage_checks"] = {
      {"nodes_distinct", report.stage1_nodes_distinct},
      {"adpower_residual", report.stage1_adpower_residual},
      {"span_rank", report.stage1_rank},
      {"span_rank_expected", report.stage1_expected},
      {"span_rank_checked", report.stage1_rank_checked},
      {"r_recovery_residual", report.stage2_residual},
      {"cartan_rank", report.stage3_rank},
      {"cartan_rank_expected", report.stage3_expected}};
  j["pass"] = report.pass;
  return j;
}

json flow_to_json(const FlowReport& report) {
  json j;
  j["t_grid"] = report.t_grid;
  json labels = json::array();
  for (MatrixClass c : report.labels) labels.push_back(to_string(c));
  j["labels"] = std::move(labels);
  j["log_determinants"] = report.log_determinants;
  j["min_entry"] = report.min_entry;
  j["max_row_sum_dev"] = report.max_row_sum_dev;
  j["pass"] = report.pass;
  return j;
}

json semigroup_to_json(const SemigroupReport& report) {
  json j;
  j["triples_checked"] = report.triples_checked;
  j["max_composition_residual"] = report.max_composition_residual;
  j["max_opposite_order_residual"] = report.max_opposite_order_residual;
  j["max_diagonal_residual"] = report.max_diagonal_residual;
  json flagged = json::array();
  for (const auto& [s, u, t] : report.flagged)
    flagged.push_back({{"s", s}, {"u", u}, {"t", t}});
  j["flagged"] = std::move(flagged);
  j["coverage_warning"] = report.coverage_warning;
  j["satisfied_order"] = report.satisfied_order;
  j["pass"] = report.pass;
  return j;
}

json simulation_to_json(const SimulationReport& report) {
  json j;
  j["n"] = report.n;
  j["steps"] = report.steps;
  j["paths"] = report.paths;
  j["seed"] = report.seed;
  json counts = json::array();
  for (const Matrix& c : report.counts) counts.push_back(matrix_to_json(c));
  j["counts"] = std::move(counts);
  json freqs = json::array();
  for (const Matrix& f : report.frequencies) freqs.push_back(matrix_to_json(f));
  j["frequencies"] = std::move(freqs);
  json law = json::array();
  for (const Vector& l : report.law) law.push_back(vector_to_json(l));
  j["law"] = std::move(law);
  return j;
}

json affine_block_to_json(const AffineBlockForm& form) {
  json j;
  j["n"] = form.n;
  j["beta0"] = form.beta0;
  j["beta0_scaled"] = form.beta0_scaled();
  j["beta"] = vector_to_json(form.beta);
  j["levi_block"] = matrix_to_json(form.levi_block);
  j["reassembled"] = matrix_to_json(form.reassemble());
  return j;
}

}  // namespace stochlie
