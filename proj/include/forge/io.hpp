#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "forge/circuit.hpp"
#include "forge/coeff_vector.hpp"
#include "forge/field.hpp"
#include "forge/hitting.hpp"
#include "forge/poly_class.hpp"

namespace forge {

using Json = nlohmann::json;

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Integers as decimal strings, field elements as digit arrays.
Json constant_to_json(const Constant& c);
Constant constant_from_json(const Json& j);

Json field_to_json(const FieldSpec& F);
FieldSpec field_from_json(const Json& j);

Json circuit_to_json(const Circuit& c);
/// Validates the document and rejects forward references, unknown ops and
/// malformed constants (InvalidArgument).
Circuit circuit_parse(const Json& j);

Json coeffs_to_json(const IntVector& v);
Json coeffs_to_json(const FieldVector& v, std::uint32_t p);
IntVector int_vector_from_json(const Json& j);
/// Checks the carrier is F_p.
FieldVector field_vector_from_json(const Json& j, std::uint32_t p);

Json params_to_json(const ClassParams& params);
ClassParams params_from_json(const Json& j);

Json class_to_json(const FieldClass& cls);
Json class_to_json(const IntClass& cls);
std::variant<FieldClass, IntClass> class_from_json(const Json& j);

Json hitting_set_to_json(const HittingSet& hs);
HittingSet hitting_set_from_json(const Json& j);

}  // namespace forge
