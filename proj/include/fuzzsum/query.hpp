#pragma once

// FSQL-style flexible queries with a top-k prefix:
//
//   SELECT [k [alpha]] (* | attr, ...) FROM relation
//     [WHERE attr comparator labels [THOLD degree] (AND ...)*] [;]

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzsum/domain.hpp"

namespace fuzzsum {

enum class Comparator {
  FEQ, FGT, FGEQ, FLT, FLEQ, MGT, MLT,
  NFEQ, NFGT, NFGEQ, NFLT, NFLEQ, NMGT, NMLT,
};

std::string_view to_string(Comparator c);
std::optional<Comparator> parse_comparator(std::string_view text);
/// True for the N-prefixed necessity forms.
bool is_necessity(Comparator c);
/// True for comparators that need an ordered vocabulary.
bool is_order_based(Comparator c);

struct Condition {
  std::string attribute;
  Comparator comparator = Comparator::FEQ;
  std::vector<std::string> labels;
  std::optional<double> thold;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Query {
  std::optional<int> k;
  std::optional<double> alpha_override;
  bool select_all = false;
  std::vector<std::string> projection;  ///< empty when select_all
  std::string relation;
  std::vector<Condition> conditions;

  const Condition* condition_for(std::string_view attribute) const;
  friend bool operator==(const Query&, const Query&) = default;
};

/// Parses and resolves names against the schema. Identifiers and keywords
/// are case-insensitive; resolved names take the schema's spelling.
/// Throws ParseError on syntax, SemanticError on unknown names, a relation
/// mismatch or a repeated condition attribute.
Query parse_query(std::string_view text, const Schema& schema);

/// Canonical query text; parse_query(to_text(q)) == q.
std::string to_text(const Query& q);

/// Labels selected by a condition, in vocabulary order.
std::vector<std::string> resolve_comparator(const Condition& c, const AttributeSpec& attr);

struct AttributePartition {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

AttributePartition partition_attributes(const Query& q, const Schema& schema);

/// 1 / max cluster_count over the condition attributes, with the query-level
/// override taking precedence. 0 when there are no conditions and no override.
double default_alpha(const Query& q, const Schema& schema);

struct Clause {
  std::string attribute;
  std::vector<std::string> labels;
  double alpha = 0.0;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct ConjunctiveProposition {
  std::vector<Clause> clauses;

  const Clause* find(std::string_view attribute) const;
  /// Largest clause alpha, 0 for the empty proposition.
  double max_alpha() const;
};

/// One clause per condition; throws SemanticError subclasses from
/// resolve_comparator and a SemanticError on an empty label set.
ConjunctiveProposition rewrite(const Query& q, const Schema& schema);

}  // namespace fuzzsum
