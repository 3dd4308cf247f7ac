#pragma once

// JSON instance files.
//
//   {"field": {"kind": "gfp", "p": 7} | {"kind": "rational"},
//    "shape": {"kind": "finite", "n": 3, "phi": [1, 2, 0], "weights": ["3", "1", "2"]}
//           | {"kind": "cofinite", "B": 1, "phi_table": [3], "weight_table": ["2"],
//              "tail_weight": "1"}}
//
// Field elements are always strings in the literal grammar of parse_element.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wgshift/error.hpp"
#include "wgshift/field.hpp"
#include "wgshift/infinite.hpp"
#include "wgshift/shift.hpp"

namespace wgshift {

using Json = nlohmann::ordered_json;

struct InstanceFile {
  FieldContext field;
  std::variant<WeightedShift, CoFinitePresentation> shape;

  bool is_finite() const noexcept { return std::holds_alternative<WeightedShift>(shape); }
  const WeightedShift& finite() const { return std::get<WeightedShift>(shape); }
  const CoFinitePresentation& cofinite() const { return std::get<CoFinitePresentation>(shape); }
};

/// Rejected instance file. `syntax` separates malformed input (bad JSON,
/// wrong types, bad literals) from well-formed input that violates an
/// invariant (out-of-range phi, length mismatch, non-prime p).
class InstanceError : public std::runtime_error {
 public:
  enum class Kind { syntax, validation };
  InstanceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

[[noreturn]] inline void syntax_error(const std::string& path, const std::string& what) {
  throw InstanceError(InstanceError::Kind::syntax, path + ": " + what);
}

[[noreturn]] inline void validation_error(const std::string& path, const std::string& what) {
  throw InstanceError(InstanceError::Kind::validation, path + ": " + what);
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) syntax_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) syntax_error(path + "." + key, "missing");
  return *it;
}

inline std::uint64_t natural(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    syntax_error(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline std::vector<std::uint64_t> natural_array(const Json& v, const std::string& path) {
  if (!v.is_array()) syntax_error(path, "expected an array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(natural(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline FieldElement element(const Json& v, const FieldContext& field, const std::string& path) {
  if (!v.is_string()) syntax_error(path, "expected a string literal");
  try {
    return parse_element(v.get<std::string>(), field);
  } catch (const Error& e) {
    syntax_error(path, e.what());
  }
}

inline std::vector<FieldElement> element_array(const Json& v, const FieldContext& field,
                                               const std::string& path) {
  if (!v.is_array()) syntax_error(path, "expected an array");
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(element(v[i], field, path + "[" + std::to_string(i) + "]"));
  return out;
}

inline FieldContext field_from_json(const Json& f) {
  const Json& kind = member(f, "kind", "field");
  if (!kind.is_string()) syntax_error("field.kind", "expected a string");
  if (kind == "rational") return FieldContext::rationals();
  if (kind != "gfp") syntax_error("field.kind", "expected \"gfp\" or \"rational\"");
  const std::uint64_t p = natural(member(f, "p", "field"), "field.p");
  try {
    return FieldContext::prime(p);
  } catch (const Error& e) {
    validation_error("field.p", e.what());
  }
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

inline Json field_to_json(const FieldContext& field) {
  Json out;
  if (field.is_prime_field()) {
    out["kind"] = "gfp";
    out["p"] = field.modulus();
  } else {
    out["kind"] = "rational";
  }
  return out;
}

inline InstanceFile parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    throw InstanceError(InstanceError::Kind::syntax, "line " + std::to_string(line) + ", column " +
                                                         std::to_string(column) + ": " + e.what());
  }

  const FieldContext field = detail::field_from_json(detail::member(doc, "field", "instance"));
  const Json& shape = detail::member(doc, "shape", "instance");
  const Json& kind = detail::member(shape, "kind", "shape");

  if (kind == "finite") {
    const std::uint64_t n = detail::natural(detail::member(shape, "n", "shape"), "shape.n");
    auto phi = detail::natural_array(detail::member(shape, "phi", "shape"), "shape.phi");
    auto weights = detail::element_array(detail::member(shape, "weights", "shape"), field,
                                         "shape.weights");
    if (n == 0) detail::validation_error("shape.n", "must be at least 1");
    if (phi.size() != n)
      detail::validation_error("shape.phi", "has " + std::to_string(phi.size()) +
                                                " entries, n = " + std::to_string(n));
    if (weights.size() != n)
      detail::validation_error("shape.weights", "has " + std::to_string(weights.size()) +
                                                    " entries, n = " + std::to_string(n));
    for (std::size_t i = 0; i < phi.size(); ++i)
      if (phi[i] >= n)
        detail::validation_error("shape.phi[" + std::to_string(i) + "]",
                                 std::to_string(phi[i]) + " is not below n = " + std::to_string(n));
    std::vector<Node> nodes(phi.begin(), phi.end());
    return {field, WeightedShift(FunctionalGraph(std::move(nodes)), field, std::move(weights))};
  }

  if (kind == "cofinite") {
    const std::uint64_t b = detail::natural(detail::member(shape, "B", "shape"), "shape.B");
    auto phi = detail::natural_array(detail::member(shape, "phi_table", "shape"), "shape.phi_table");
    auto weights = detail::element_array(detail::member(shape, "weight_table", "shape"), field,
                                         "shape.weight_table");
    FieldElement tail =
        detail::element(detail::member(shape, "tail_weight", "shape"), field, "shape.tail_weight");
    if (phi.size() != b)
      detail::validation_error("shape.phi_table", "has " + std::to_string(phi.size()) +
                                                      " entries, B = " + std::to_string(b));
    if (weights.size() != b)
      detail::validation_error("shape.weight_table", "has " + std::to_string(weights.size()) +
                                                         " entries, B = " + std::to_string(b));
    return {field, CoFinitePresentation(field, std::move(phi), std::move(weights), std::move(tail))};
  }

  detail::syntax_error("shape.kind", "expected \"finite\" or \"cofinite\"");
}

inline Json instance_to_json(const InstanceFile& inst) {
  Json shape;
  if (inst.is_finite()) {
    const WeightedShift& s = inst.finite();
    shape["kind"] = "finite";
    shape["n"] = s.size();
    shape["phi"] = s.graph().table();
    Json w = Json::array();
    for (const auto& e : s.weights()) w.push_back(e.to_string());
    shape["weights"] = std::move(w);
  } else {
    const CoFinitePresentation& p = inst.cofinite();
    shape["kind"] = "cofinite";
    shape["B"] = p.boundary();
    shape["phi_table"] = p.phi_table();
    Json w = Json::array();
    for (const auto& e : p.weight_table()) w.push_back(e.to_string());
    shape["weight_table"] = std::move(w);
    shape["tail_weight"] = p.tail_weight().to_string();
  }
  Json doc;
  doc["field"] = field_to_json(inst.field);
  doc["shape"] = std::move(shape);
  return doc;
}

inline std::string serialize_instance(const InstanceFile& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

}  // namespace wgshift
