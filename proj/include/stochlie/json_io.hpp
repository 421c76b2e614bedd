#pragma once

#include "stochlie/basis.hpp"
#include "stochlie/classify.hpp"
#include "stochlie/decomp.hpp"
#include "stochlie/markov.hpp"
#include "stochlie/structure.hpp"
#include "stochlie/twogen.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace stochlie {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m);            // nested rows
json matrix_to_flat_json(const Matrix& m);       // row-major flat array
json vector_to_json(const Vector& v);

/// Accepts either {"n": k, "rows": [[...]]} or a plain nested array.
Matrix matrix_from_json(const json& j);

/// One matrix row per CSV line. Throws ParseError with line/column info.
Matrix matrix_from_csv(std::istream& in);

/// Dispatch on extension: ".csv" or anything else as JSON.
Matrix matrix_from_file(const std::string& path);
Vector vector_from_file(const std::string& path);

/// {"times": [...], "entries": [{"s": , "t": , "matrix": }]}; s and t must
/// match entries of the time grid.
TransitionFamily family_from_json(const json& j);
TransitionFamily family_from_file(const std::string& path);

json basis_to_json(const StochasticBasis& basis);
json table_report_to_json(const TableReport& report);
json structure_constants_to_json(const StructureConstants& sc);
json killing_to_json(const KillingGram& gram, const SemisimplicityCertificate& cert);
json root_system_to_json(const RootSystem& rs);
json dynkin_to_json(const DynkinDiagram& d);
json levi_to_json(const LeviCertificate& cert, int radical_oracle_dim,
                  bool radical_oracle_agrees, const Tolerance& tol = {});
json twogen_to_json(const TwoGenerationReport& report);
json flow_to_json(const FlowReport& report);
json semigroup_to_json(const SemigroupReport& report);
json simulation_to_json(const SimulationReport& report);
json affine_block_to_json(const AffineBlockForm& form);

}  // namespace stochlie
