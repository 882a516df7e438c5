#pragma once

#include <json.hpp>
#include <variant>

#include "isomlab/certificate.hpp"
#include "isomlab/cooper.hpp"
#include "isomlab/fell.hpp"
#include "isomlab/gauss.hpp"
#include "isomlab/representation.hpp"
#include "isomlab/wold.hpp"

namespace isomlab::jsonio {

using json = nlohmann::ordered_json;

// Schema violations carry the offending field so the CLI can name it.
struct SchemaError : std::runtime_error {
  SchemaError(const std::string& field_in, const std::string& what_in)
      : std::runtime_error("field '" + field_in + "': " + what_in),
        field(field_in) {}
  std::string field;
};

// Deterministic dump: stable field order (insertion order) and floats
// printed with 17 significant digits, newline-terminated.
std::string dump_json(const json& j);

json complex_to_json(cdouble z);
cdouble complex_from_json(const json& j, const std::string& field);

json expvector_to_json(const expspan::ExpVector& v);
expspan::ExpVector expvector_from_json(const json& j);

json sparsevector_to_json(const discrete::SparseVector& v);
discrete::SparseVector sparsevector_from_json(const json& j);

// FellPoint JSON uses 1-based directions: {"d":2,"A":[1],"lambda":{"2":5.0}}.
json fellpoint_to_json(const fell::FellPoint& p);
fell::FellPoint fellpoint_from_json(const json& j);

json boundary_to_json(const gauss::BoundarySequence& a);
gauss::BoundarySequence boundary_from_json(const json& j);

json gaussvector_to_json(const gauss::GaussVector& v);
gauss::GaussVector gaussvector_from_json(const json& j);

json periodic_to_json(const cooper::PeriodicSemigroup& T);
cooper::PeriodicSemigroup periodic_from_json(const json& j);

// Representations the CLI can instantiate from JSON descriptions.
using AnyRep = std::variant<ShiftRep, DiscreteRep, fell::ModelRep, gauss::GaussRep>;
AnyRep rep_from_json(const json& j);

json load_json_file(const std::string& path);

}  // namespace isomlab::jsonio
