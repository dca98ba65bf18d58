#pragma once

// Vocabulary, attribute and value model for fuzzy relational data.
//
// An attribute carries an ordered list of linguistic labels. Values stored in
// a cell follow the usual fuzzy-database conventions: crisp numbers,
// trapezoidal possibility distributions, references to a label of the
// attribute, and the three special constants Unknown, Undefined and Null.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace fuzzsum {

enum class FType { Ftype1, Ftype2, Ftype3, Ftype4 };

std::string_view to_string(FType t);
std::optional<FType> parse_ftype(std::string_view text);

/// Support [a,d] and core [b,c] of a trapezoidal possibility distribution.
struct Trapezoid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  bool well_formed() const { return a <= b && b <= c && c <= d; }
  double centroid() const { return (a + b + c + d) / 4.0; }
  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

struct LinguisticLabel {
  std::string name;
  int order_index = 0;
  std::optional<Trapezoid> trapezoid;
};

using SimilarityMatrix = std::vector<std::vector<double>>;

struct AttributeSpec {
  std::string name;
  FType ftype = FType::Ftype1;
  std::vector<LinguisticLabel> labels;
  int cluster_count = 1;
  std::optional<SimilarityMatrix> similarity;

  std::optional<std::size_t> label_index(std::string_view label) const;
  const LinguisticLabel* find_label(std::string_view label) const;

  /// FTYPE1/FTYPE2 attributes live on an ordered numeric domain; their
  /// labels support order comparators and their values are clustered.
  bool ordered() const { return ftype == FType::Ftype1 || ftype == FType::Ftype2; }
  bool clustered() const { return ordered(); }
};

struct Schema {
  std::string relation;
  std::vector<AttributeSpec> attributes;

  const AttributeSpec* find(std::string_view attribute) const;
  /// Case-insensitive lookup, used when resolving query identifiers.
  const AttributeSpec* find_ci(std::string_view attribute) const;
  const AttributeSpec& at(std::string_view attribute) const;
};

// Cell values.
struct Crisp {
  double value = 0.0;
  friend bool operator==(const Crisp&, const Crisp&) = default;
};
struct LabelRef {
  std::string label;
  friend bool operator==(const LabelRef&, const LabelRef&) = default;
};
struct Unknown {
  friend bool operator==(const Unknown&, const Unknown&) = default;
};
struct Undefined {
  friend bool operator==(const Undefined&, const Undefined&) = default;
};
struct Null {
  friend bool operator==(const Null&, const Null&) = default;
};

using FuzzyValue = std::variant<Crisp, Trapezoid, LabelRef, Unknown, Undefined, Null>;

std::string to_string(const FuzzyValue& v);

struct Dataset {
  Schema schema;
  std::vector<std::string> tuple_ids;
  /// rows[i][j] is the value of tuple_ids[i] on schema.attributes[j].
  std::vector<std::vector<FuzzyValue>> rows;

  std::size_t attribute_position(std::string_view attribute) const;
  const FuzzyValue& value(std::size_t row, std::string_view attribute) const;
};

/// Membership of x in a trapezoid. Degenerate ramps (a == b or c == d)
/// behave as closed step edges. Throws ConfigError on a malformed shape.
double trapezoid_membership(double x, const Trapezoid& shape);

/// Possibility measure sup_x min(p(x), q(x)) of two trapezoids.
double trapezoid_possibility(const Trapezoid& p, const Trapezoid& q);

/// Degree to which cell value v is compatible with label of attr.
///
/// Crisp values are evaluated against the label's trapezoid, trapezoids by the
/// sup-min possibility, label references by the similarity matrix (FTYPE3) or
/// identity. Unknown is fully possible for every label; Undefined and Null
/// match nothing.
double value_label_membership(const FuzzyValue& v, const LinguisticLabel& label,
                              const AttributeSpec& attr);

struct SchemaViolation {
  std::string attribute;
  std::string label;  // empty when the violation is attribute-level
  std::string message;

  friend bool operator==(const SchemaViolation&, const SchemaViolation&) = default;
};

std::vector<SchemaViolation> validate_schema(const std::vector<AttributeSpec>& attributes);

/// Checks value-level invariants (trapezoid shape, known labels, row arity).
std::vector<SchemaViolation> validate_dataset(const Dataset& ds);

}  // namespace fuzzsum
