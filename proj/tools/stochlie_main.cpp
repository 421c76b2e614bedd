// Command-line front end: certifications and reports for the stochastic Lie
// algebra, plus transition-matrix utilities.
//
// Exit codes: 0 = all checks passed, 1 = a mathematical certification failed,
// 2 = usage or input error.

#include "stochlie/decomp.hpp"
#include "stochlie/json_io.hpp"
#include "stochlie/markov.hpp"
#include "stochlie/rng.hpp"
#include "stochlie/structure.hpp"
#include "stochlie/twogen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace stochlie;

constexpr int kExitPass = 0;
constexpr int kExitCertificationFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  int n = 3;
  std::string format = "text";
  std::string out_path;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  std::uint64_t seed = 20240101;
};

void add_output_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", opts.out_path, "Write the report to a file");
  cmd->add_option("--tol-abs", opts.tol_abs, "Absolute tolerance");
  cmd->add_option("--tol-rel", opts.tol_rel, "Relative tolerance");
}

void add_n_option(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--n", opts.n, "Matrix size n")->required();
}

Tolerance tolerance_of(const CommonOptions& opts) {
  return Tolerance{opts.tol_abs, opts.tol_rel};
}

int emit(const CommonOptions& opts, const json& payload, const std::string& text) {
  const std::string body = opts.format == "json" ? payload.dump(2) + "\n" : text;
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    if (!out) {
      std::cerr << "cannot write to " << opts.out_path << "\n";
      return kExitUsage;
    }
    out << body;
  } else {
    std::cout << body;
  }
  return kExitPass;
}

bool check_n(const CommonOptions& opts) {
  if (opts.n < 2) {
    std::cerr << "n must be >= 2\n";
    return false;
  }
  return true;
}

// --- basis ------------------------------------------------------------

struct BasisInvariants {
  double gram_residual = 0.0;
  double ones_residual = 0.0;
  int legacy_union_rank = 0;
  bool pass = false;
};

BasisInvariants basis_invariants(const StochasticBasis& basis, const Tolerance& tol) {
  BasisInvariants inv;
  const int dim = basis.dimension();
  for (int a = 0; a < dim; ++a) {
    inv.ones_residual = std::max(
        inv.ones_residual, algebra_membership_residual(basis.elements[a].matrix));
    for (int b = 0; b <= a; ++b) {
      const double g =
          frobenius_inner(basis.elements[a].matrix, basis.elements[b].matrix);
      inv.gram_residual =
          std::max(inv.gram_residual, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }
  std::vector<Matrix> legacy = build_legacy_radical_generators(basis.n);
  legacy.push_back(basis.Z());
  for (int i = 1; i <= basis.n - 1; ++i) legacy.push_back(basis.R(i));
  inv.legacy_union_rank = span_dimension(legacy, tol);
  inv.pass = inv.gram_residual < 1e-9 && inv.ones_residual < 1e-10 &&
             inv.legacy_union_rank == basis.n;
  return inv;
}

int cmd_basis(const CommonOptions& opts) {
  if (!check_n(opts)) return kExitUsage;
  const StochasticBasis basis = build_basis(opts.n);
  const BasisInvariants inv = basis_invariants(basis, tolerance_of(opts));

  json j = basis_to_json(basis);
  j["invariants"] = {{"gram_residual", inv.gram_residual},
                     {"ones_residual", inv.ones_residual},
                     {"legacy_union_rank", inv.legacy_union_rank},
                     {"pass", inv.pass}};

  std::ostringstream text;
  text << "basis n=" << opts.n << ": " << basis.dimension() << " elements\n"
       << "  gram residual:        " << inv.gram_residual << "\n"
       << "  E*ones residual:      " << inv.ones_residual << "\n"
       << "  legacy span rank:     " << inv.legacy_union_rank << " (expect "
       << opts.n << ")\n"
       << "  invariants: " << (inv.pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return inv.pass ? kExitPass : kExitCertificationFailed;
}

// --- classify ----------------------------------------------------------

struct Phi1Diagnostics {
  double hom_residual = 0.0;
  int diagonal_rank = 0;
  int offdiagonal_rank = 0;
  bool pass = false;
};

Phi1Diagnostics phi1_diagnostics(const StochasticBasis& basis, std::uint64_t seed) {
  const int n = basis.n;
  const RepresentationMaps maps = build_representation_maps(basis.frame);
  Phi1Diagnostics diag;
  SeededRng rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    Vector xc = Vector::Zero(basis.dimension());
    Vector yc = Vector::Zero(basis.dimension());
    for (int a = basis.levi_offset(); a < basis.dimension(); ++a) {
      xc[a] = rng.gaussian();
      yc[a] = rng.gaussian();
    }
    const Matrix x = basis.from_coordinates(xc);
    const Matrix y = basis.from_coordinates(yc);
    const double scale = 1.0 + x.norm() * y.norm();
    diag.hom_residual = std::max(
        diag.hom_residual,
        (phi1(maps, commutator(x, y)) - commutator(phi1(maps, x), phi1(maps, y)))
                .norm() /
            scale);
  }
  std::vector<Matrix> h_images, a_images;
  for (int k = 1; k <= n - 2; ++k) h_images.push_back(phi1(maps, basis.H(k)));
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      if (i != j) a_images.push_back(phi1(maps, basis.A(i, j)));
  diag.diagonal_rank = span_dimension(h_images);
  diag.offdiagonal_rank = span_dimension(a_images);
  diag.pass = diag.hom_residual < 1e-8 && diag.diagonal_rank == n - 2 &&
              diag.offdiagonal_rank == (n - 1) * (n - 2);
  return diag;
}

int cmd_classify(const CommonOptions& opts) {
  if (!check_n(opts)) return kExitUsage;
  if (opts.n == 2) {
    json j = {{"n", 2},
              {"trivial", true},
              {"notice", "trivial Levi factor: the algebra is solvable for n = 2"}};
    return emit(opts, j, "classify n=2: trivial Levi factor (nothing to classify)\n");
  }

  const StochasticBasis basis = build_basis(opts.n);
  const Tolerance tol = tolerance_of(opts);
  const TableReport table = verify_multiplication_table(basis, tol);
  const KillingGram killing = killing_form_levi(basis);
  const SemisimplicityCertificate cert = verify_semisimplicity(killing, tol);
  const RootSystem roots = compute_roots(basis);
  const DynkinDiagram dynkin = detect_dynkin(roots);
  const RootSpaceReport spaces = root_space_check(basis, tol);
  const Phi1Diagnostics rep = phi1_diagnostics(basis, opts.seed);

  const std::string expected_type = "A_" + std::to_string(opts.n - 2);
  const bool pass = table.pass && cert.semisimple && spaces.pass &&
                    dynkin.detected_type == expected_type && rep.pass;

  json j;
  j["n"] = opts.n;
  j["table"] = table_report_to_json(table);
  j["killing"] = killing_to_json(killing, cert);
  j["roots"] = root_system_to_json(roots);
  j["dynkin"] = dynkin_to_json(dynkin);
  j["root_spaces"] = {{"max_residual", spaces.max_residual},
                      {"cartan_abelian_residual", spaces.cartan_abelian_residual},
                      {"pass", spaces.pass}};
  j["phi1"] = {{"hom_residual", rep.hom_residual},
               {"diagonal_rank", rep.diagonal_rank},
               {"offdiagonal_rank", rep.offdiagonal_rank},
               {"pass", rep.pass}};
  j["seed"] = opts.seed;
  j["pass"] = pass;

  std::ostringstream text;
  text << "classify n=" << opts.n << "\n"
       << "  multiplication table residual: " << table.max_residual << "\n"
       << "  killing min singular value:    " << cert.min_singular_value
       << " (expect " << 2.0 * (opts.n - 1) << ")\n"
       << "  semisimple:                    " << (cert.semisimple ? "yes" : "NO")
       << "\n"
       << "  detected type:                 " << dynkin.detected_type << "\n"
       << dynkin.ascii(&roots) << "\n"
       << "  phi1 residual (200 pairs):     " << rep.hom_residual << "\n"
       << "  phi1 image ranks:              " << rep.diagonal_rank << " diagonal + "
       << rep.offdiagonal_rank << " off-diagonal\n"
       << "  " << (pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return pass ? kExitPass : kExitCertificationFailed;
}

// --- levi ---------------------------------------------------------------

int cmd_levi(const CommonOptions& opts) {
  if (!check_n(opts)) return kExitUsage;
  const StochasticBasis basis = build_basis(opts.n);
  const Tolerance tol = tolerance_of(opts);
  const LeviCertificate cert = certify_levi(basis, tol);
  const auto kernel = radical_from_killing(basis, tol);

  const int expected = opts.n == 2 ? 2 : opts.n;
  std::vector<Vector> both = kernel;
  for (int r = 0; r < opts.n; ++r) {
    Vector e = Vector::Zero(basis.dimension());
    e[r] = 1.0;
    both.push_back(e);
  }
  const bool oracle_agrees = static_cast<int>(kernel.size()) == expected &&
                             span_dimension(both, tol) == expected;

  const json j = levi_to_json(cert, static_cast<int>(kernel.size()), oracle_agrees, tol);
  const bool pass = cert.pass(tol) && oracle_agrees;

  std::ostringstream text;
  text << "levi n=" << opts.n << "\n"
       << "  ideal residual:        " << cert.ideal_residual << "\n"
       << "  subalgebra residual:   " << cert.subalgebra_residual << "\n"
       << "  derived series dims:  ";
  for (int d : cert.derived_series_dims) text << " " << d;
  text << "\n  direct sum rank:       " << cert.direct_sum_rank << " (expect "
       << opts.n * (opts.n - 1) << ")\n"
       << "  radical oracle dim:    " << kernel.size() << " (expect " << expected
       << ", agrees: " << (oracle_agrees ? "yes" : "NO") << ")\n"
       << "  " << (pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return pass ? kExitPass : kExitCertificationFailed;
}

// --- generators -----------------------------------------------------------

int cmd_generators(const CommonOptions& opts) {
  if (!check_n(opts)) return kExitUsage;
  const TwoGenerationReport report = certify_two_generation(opts.n, tolerance_of(opts));
  const json j = twogen_to_json(report);

  std::ostringstream text;
  text << "generators n=" << opts.n << "\n  gamma:";
  if (report.gamma_applicable)
    for (const Rational& q : report.scaled.entries)
      text << " " << to_fraction_string(q);
  else
    text << " (not applicable at n = 2)";
  text << "\n  dims per round:  ";
  for (int d : report.closure.dims) text << " " << d;
  text << "\n  final dimension:  " << report.closure.final_dim << " (expect "
       << opts.n * (opts.n - 1) << ")\n"
       << "  " << (report.pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return report.pass ? kExitPass : kExitCertificationFailed;
}

// --- report (umbrella) -----------------------------------------------------

int cmd_report(const CommonOptions& opts) {
  if (!check_n(opts)) return kExitUsage;
  const StochasticBasis basis = build_basis(opts.n);
  const Tolerance tol = tolerance_of(opts);

  const BasisInvariants inv = basis_invariants(basis, tol);
  const TableReport table = verify_multiplication_table(basis, tol);
  const KillingGram killing = killing_form_levi(basis);
  const SemisimplicityCertificate cert = verify_semisimplicity(killing, tol);
  const LeviCertificate levi = certify_levi(basis, tol);
  const auto kernel = radical_from_killing(basis, tol);
  const int expected_radical = opts.n == 2 ? 2 : opts.n;
  std::vector<Vector> both = kernel;
  for (int r = 0; r < opts.n; ++r) {
    Vector e = Vector::Zero(basis.dimension());
    e[r] = 1.0;
    both.push_back(e);
  }
  const bool oracle_agrees = static_cast<int>(kernel.size()) == expected_radical &&
                             span_dimension(both, tol) == expected_radical;
  const TwoGenerationReport twogen = certify_two_generation(opts.n, tol);

  json j;
  j["n"] = opts.n;
  j["basis_invariants"] = {{"gram_residual", inv.gram_residual},
                           {"ones_residual", inv.ones_residual},
                           {"legacy_union_rank", inv.legacy_union_rank},
                           {"pass", inv.pass}};
  j["table"] = table_report_to_json(table);
  j["killing"] = killing_to_json(killing, cert);
  bool classify_pass = true;
  if (opts.n >= 3) {
    const RootSystem roots = compute_roots(basis);
    const DynkinDiagram dynkin = detect_dynkin(roots);
    const Phi1Diagnostics rep = phi1_diagnostics(basis, opts.seed);
    j["roots"] = root_system_to_json(roots);
    j["dynkin"] = dynkin_to_json(dynkin);
    j["phi1"] = {{"hom_residual", rep.hom_residual},
                 {"diagonal_rank", rep.diagonal_rank},
                 {"offdiagonal_rank", rep.offdiagonal_rank},
                 {"pass", rep.pass}};
    classify_pass =
        dynkin.detected_type == "A_" + std::to_string(opts.n - 2) && rep.pass;
  } else {
    j["dynkin"] = {{"detected_type", "trivial"},
                   {"notice", "trivial Levi factor at n = 2"}};
  }
  j["levi"] =
      levi_to_json(levi, static_cast<int>(kernel.size()), oracle_agrees, tol);
  j["two_generation"] = twogen_to_json(twogen);
  j["seed"] = opts.seed;

  const bool pass = inv.pass && table.pass && cert.semisimple && classify_pass &&
                    levi.pass(tol) && oracle_agrees && twogen.pass;
  j["pass"] = pass;

  std::ostringstream text;
  text << "report n=" << opts.n << "\n"
       << "  basis invariants:  " << (inv.pass ? "pass" : "FAIL") << "\n"
       << "  table:             " << (table.pass ? "pass" : "FAIL")
       << " (max residual " << table.max_residual << ")\n"
       << "  killing/semisimple:" << (cert.semisimple ? " pass" : " FAIL") << "\n"
       << "  classification:    " << (classify_pass ? "pass" : "FAIL") << "\n"
       << "  levi:              "
       << (levi.pass(tol) && oracle_agrees ? "pass" : "FAIL") << "\n"
       << "  two generation:    " << (twogen.pass ? "pass" : "FAIL") << "\n"
       << "  overall:           " << (pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return pass ? kExitPass : kExitCertificationFailed;
}

// --- markov ---------------------------------------------------------------

int cmd_markov_check(const CommonOptions& opts, const std::string& path) {
  const Matrix m = matrix_from_file(path);
  const ValidationResult result = validate_transition(m);
  const MatrixClass label = classify_matrix(m);

  json j = {{"file", path},
            {"n", m.rows()},
            {"valid_transition", result.ok},
            {"clause", result.clause},
            {"min_entry", result.min_entry},
            {"max_row_sum_dev", result.max_row_sum_dev},
            {"class", to_string(label)}};

  std::ostringstream text;
  text << "check " << path << ": "
       << (result.ok ? std::string("valid transition matrix")
                     : "INVALID (clause " + result.clause + ")")
       << ", class " << to_string(label) << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return result.ok ? kExitPass : kExitCertificationFailed;
}

int cmd_markov_semigroup(const CommonOptions& opts, const std::string& path) {
  const TransitionFamily family = family_from_file(path);
  for (const auto& [key, matrix] : family.matrices) {
    const ValidationResult check = validate_transition(matrix);
    if (!check.ok) {
      std::cerr << "family entry (" << family.times[key.first] << ", "
                << family.times[key.second] << ") fails clause " << check.clause
                << "\n";
      return kExitCertificationFailed;
    }
  }
  const SemigroupReport report = check_semigroup(family, tolerance_of(opts));
  const json j = semigroup_to_json(report);

  std::ostringstream text;
  text << "semigroup " << path << ": " << report.triples_checked
       << " triples, max residual " << report.max_composition_residual
       << " (opposite order " << report.max_opposite_order_residual << ")\n"
       << "  satisfied order: " << report.satisfied_order << "\n";
  if (report.coverage_warning)
    text << "  warning: no complete (s, u, t) triple in the family\n";
  text << "  " << (report.pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return report.pass ? kExitPass : kExitCertificationFailed;
}

int cmd_markov_flow(const CommonOptions& opts, const std::string& path,
                    std::vector<double> grid) {
  const Matrix m = matrix_from_file(path);
  if (grid.empty()) grid = {0.1, 1.0, 10.0};
  const GeneratorCone cone = make_generator(m);
  const FlowReport report = flow_invariance(cone, grid);
  const json j = flow_to_json(report);

  std::ostringstream text;
  text << "flow " << path << ": min entry " << report.min_entry
       << ", max row-sum deviation " << report.max_row_sum_dev << "\n"
       << "  " << (report.pass ? "pass" : "FAIL") << "\n";

  const int rc = emit(opts, j, text.str());
  if (rc != kExitPass) return rc;
  return report.pass ? kExitPass : kExitCertificationFailed;
}

int cmd_markov_simulate(const CommonOptions& opts, const std::string& path,
                        int steps, long paths, const std::string& initial_path) {
  const TransitionMatrix p = make_transition(matrix_from_file(path));
  Vector initial;
  if (initial_path.empty())
    initial = Vector::Constant(p.n, 1.0 / p.n);
  else
    initial = vector_from_file(initial_path);
  const SimulationReport report = simulate_chain(p, initial, steps, paths, opts.seed);
  const json j = simulation_to_json(report);

  std::ostringstream text;
  text << "simulate " << path << ": " << paths << " paths, " << steps
       << " steps, seed " << opts.seed << "\n  final law:";
  for (Eigen::Index i = 0; i < report.law.back().size(); ++i)
    text << " " << report.law.back()[i];
  text << "\n";

  return emit(opts, j, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic Lie algebra toolkit"};
  app.require_subcommand(1);

  CommonOptions opts;

  auto* basis_cmd = app.add_subcommand("basis", "Build and verify the labeled basis");
  add_n_option(basis_cmd, opts);
  add_output_options(basis_cmd, opts);

  auto* classify_cmd =
      app.add_subcommand("classify", "Killing form, roots and Dynkin type");
  add_n_option(classify_cmd, opts);
  add_output_options(classify_cmd, opts);
  classify_cmd->add_option("--seed", opts.seed, "Seed for randomized diagnostics");

  auto* levi_cmd = app.add_subcommand("levi", "Levi decomposition certificate");
  add_n_option(levi_cmd, opts);
  add_output_options(levi_cmd, opts);

  auto* generators_cmd =
      app.add_subcommand("generators", "Two-generator construction and closure");
  add_n_option(generators_cmd, opts);
  add_output_options(generators_cmd, opts);

  auto* report_cmd = app.add_subcommand("report", "Run every certification");
  add_n_option(report_cmd, opts);
  add_output_options(report_cmd, opts);
  report_cmd->add_option("--seed", opts.seed, "Seed for randomized diagnostics");

  auto* markov_cmd = app.add_subcommand("markov", "Transition-matrix utilities");
  markov_cmd->require_subcommand(1);

  std::string file_path, initial_path;
  std::vector<double> t_grid;
  int steps = 1;
  long paths = 10000;

  auto* check_cmd = markov_cmd->add_subcommand("check", "Validate a transition matrix");
  check_cmd->add_option("file", file_path, "CSV or JSON matrix")->required();
  add_output_options(check_cmd, opts);

  auto* semigroup_cmd =
      markov_cmd->add_subcommand("semigroup", "Check a family for consistency");
  semigroup_cmd->add_option("file", file_path, "Family JSON")->required();
  add_output_options(semigroup_cmd, opts);

  auto* flow_cmd = markov_cmd->add_subcommand("flow", "Exponentials of a cone element");
  flow_cmd->add_option("file", file_path, "CSV or JSON matrix")->required();
  flow_cmd->add_option("--t", t_grid, "Time grid (repeatable)");
  add_output_options(flow_cmd, opts);

  auto* simulate_cmd = markov_cmd->add_subcommand("simulate", "Monte-Carlo chain runs");
  simulate_cmd->add_option("file", file_path, "CSV or JSON matrix")->required();
  simulate_cmd->add_option("--steps", steps, "Number of steps");
  simulate_cmd->add_option("--paths", paths, "Number of paths");
  simulate_cmd->add_option("--seed", opts.seed, "Simulation seed");
  simulate_cmd->add_option("--initial", initial_path, "Initial distribution JSON");
  add_output_options(simulate_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (basis_cmd->parsed()) return cmd_basis(opts);
    if (classify_cmd->parsed()) return cmd_classify(opts);
    if (levi_cmd->parsed()) return cmd_levi(opts);
    if (generators_cmd->parsed()) return cmd_generators(opts);
    if (report_cmd->parsed()) return cmd_report(opts);
    if (markov_cmd->parsed()) {
      if (check_cmd->parsed()) return cmd_markov_check(opts, file_path);
      if (semigroup_cmd->parsed()) return cmd_markov_semigroup(opts, file_path);
      if (flow_cmd->parsed()) return cmd_markov_flow(opts, file_path, t_grid);
      if (simulate_cmd->parsed())
        return cmd_markov_simulate(opts, file_path, steps, paths, initial_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitCertificationFailed;
  } catch (const ShapeError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kExitCertificationFailed;
  } catch (const ConsistencyError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kExitCertificationFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
