#pragma once

// Repair of queries with an empty answer: locate the summaries where the
// exploration fails and substitute the failing labels with the closest
// alternatives found below them.

#include <map>
#include <string>
#include <vector>

#include "fuzzsum/json.hpp"
#include "fuzzsum/query.hpp"
#include "fuzzsum/search.hpp"
#include "fuzzsum/summary.hpp"

namespace fuzzsum {

struct FailureNode {
  int summary_id = 0;
  std::vector<std::string> failed_attributes;  ///< clause order
};

/// A summary fails when it meets at least one clause while another clause is
/// Violated, or Pending at a leaf. Failure nodes are failing summaries with
/// no failing parent meeting the same clauses. Falls back to the root with
/// every unmet clause attribute. Throws UsageError when the search found
/// results.
std::vector<FailureNode> detect_failures(const SummaryHierarchy& h, const ConjunctiveProposition& p,
                                         const SearchResult& found);

/// Number of clause labels present in the summary's intent.
int distance(const ConjunctiveProposition& p, const ConceptSummary& s);

struct SubstitutionQuery {
  Query query;
  int failure_node = 0;
  std::map<std::string, std::vector<std::string>> replaced;
  int distance = 0;
  Evaluation evaluation;
};

struct RepairReport {
  std::string query;
  std::vector<FailureNode> failures;
  std::vector<SubstitutionQuery> substitutions;  ///< distance desc, then failure node
  std::vector<std::string> diagnostics;
};

/// For every failed attribute of a failure node, takes the children with
/// alternative labels on it, keeps the ones of greatest distance and unions
/// their labels; without such children the node's own labels are used. Each
/// substitution is evaluated in the given mode and kept only when it returns
/// results.
RepairReport propose_substitutions(const SummaryHierarchy& h, const Schema& schema, const Query& q,
                                   const std::vector<FailureNode>& failures, MatchMode mode);

/// Evaluates q and, when it returns nothing, detects failures and proposes
/// substitutions. Returns an empty report (no failures) for a nonempty answer.
RepairReport repair(const SummaryHierarchy& h, const Schema& schema, const Query& q, MatchMode mode);

Json repair_to_json(const SummaryHierarchy& h, const RepairReport& r);

}  // namespace fuzzsum
