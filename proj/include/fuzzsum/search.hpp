#pragma once

// Lattice-guided evaluation of a conjunctive proposition over a summary
// hierarchy, satisfaction degrees and top-k ranking.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzsum/json.hpp"
#include "fuzzsum/query.hpp"
#include "fuzzsum/summary.hpp"

namespace fuzzsum {

enum class MatchMode { Strict, Tolerant, Exhaustive };

std::string_view to_string(MatchMode m);
std::optional<MatchMode> parse_match_mode(std::string_view text);

enum class Grade { Satisfied, Partial, Pending, Violated };
enum class Verdict { Exact, Indecision, False };

std::string_view to_string(Grade g);
std::string_view to_string(Verdict v);

struct Correspondence {
  Verdict verdict = Verdict::Indecision;
  /// One entry per clause, in clause order.
  std::vector<std::pair<std::string, Grade>> per_attribute;
};

/// With S the summary's labels on a clause attribute and Q the clause labels:
/// S empty is Pending, S within Q Satisfied, S disjoint from Q Violated,
/// anything else Partial. Tolerant grading reads Partial as Satisfied.
Correspondence grade(const ConceptSummary& s, const ConjunctiveProposition& p, bool tolerant = false);

/// Every clause meets the summary's intent (S and Q intersect).
bool matches_every_clause(const ConceptSummary& s, const ConjunctiveProposition& p);

enum class Action { Insert, Descend, Prune, Stop };

std::string_view to_string(Action a);

struct TraceStep {
  int summary_id = 0;
  Verdict verdict = Verdict::Indecision;
  Action action = Action::Descend;
};

struct SearchResult {
  MatchMode mode = MatchMode::Strict;
  std::vector<int> results;  ///< ascending id
  std::vector<TraceStep> trace;  ///< visit order
};

/// Depth-first from the root, children by ascending id, each summary visited
/// once.
///
/// strict/tolerant: Exact inserts and stops, Indecision descends, False
/// prunes. A result below another Exact summary is dropped.
/// exhaustive: collects every summary meeting every clause; a subtree is
/// pruned only when some clause has no label anywhere below it.
///
/// Summaries with an empty extent are never results.
SearchResult search(const SummaryHierarchy& h, const ConjunctiveProposition& p, MatchMode mode);

/// Longest root-to-summary path over fuzzy edge scores, for every summary.
std::map<int, double> satisfaction_degrees(const SummaryHierarchy& h);
double satisfaction_degree(const SummaryHierarchy& h, int id);

struct RankedResult {
  int summary_id = 0;
  std::string name;
  std::vector<std::string> intent;
  double sd = 0.0;
  double alpha = 0.0;
  FuzzyExtent extent;  ///< alpha-cut, never empty
  MatchMode match_mode = MatchMode::Strict;
};

/// Alpha-cuts every result at alpha, drops empty cuts and sorts by SD
/// descending, then full extent size descending, then intent, then id.
/// No truncation when k is absent.
std::vector<RankedResult> top_k(const SummaryHierarchy& h, const SearchResult& found, double alpha,
                                std::optional<int> k);

struct Evaluation {
  Query query;
  ConjunctiveProposition proposition;
  SearchResult search;
  std::vector<RankedResult> ranked;
};

/// Rewrite, search and rank in one call. k falls back to the query's own.
Evaluation evaluate(const SummaryHierarchy& h, const Schema& schema, const Query& q, MatchMode mode,
                    std::optional<int> k = std::nullopt);

Json ranked_to_json(const std::vector<RankedResult>& ranked);
Json evaluation_to_json(const Evaluation& e);

}  // namespace fuzzsum
