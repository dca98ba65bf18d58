#pragma once

// Concept lattice read as a hierarchy of linguistic summaries.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fuzzsum/json.hpp"
#include "fuzzsum/lattice.hpp"

namespace fuzzsum {

struct ConceptSummary {
  int id = 0;
  std::string name;  ///< display name, "z<id>" unless a fixture names it
  std::vector<std::string> intent;
  FuzzyExtent extent;
  int level = 0;

  std::vector<std::string> labels_of(std::string_view attribute) const;
  bool crisp_empty() const { return extent.empty(); }
};

class SummaryHierarchy {
public:
  SummaryHierarchy() = default;

  /// Takes ownership of the summaries and the downward edges. Levels are
  /// recomputed as intent cardinality. Throws DataError when an edge does
  /// not strictly grow the intent, the graph has a cycle, or some summary
  /// is unreachable from the root.
  SummaryHierarchy(std::vector<ConceptSummary> summaries, std::map<int, std::vector<int>> children, int root);

  int root() const { return root_; }
  const std::vector<ConceptSummary>& summaries() const { return summaries_; }
  const ConceptSummary& at(int id) const;
  const ConceptSummary* find(int id) const;
  const ConceptSummary* find_by_name(std::string_view name) const;

  /// Children and parents, ascending by id.
  const std::vector<int>& children(int id) const;
  const std::vector<int>& parents(int id) const;
  bool is_leaf(int id) const { return children(id).empty(); }

  /// Proper descendants of id.
  const std::set<int>& descendants(int id) const;
  /// Ids in an order where every parent precedes its children.
  const std::vector<int>& topological_order() const { return topo_; }

  std::vector<int> level(int n) const;

private:
  std::size_t index_of(int id) const;

  std::vector<ConceptSummary> summaries_;
  std::map<int, std::size_t> index_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::set<int>> descendants_;
  std::vector<int> topo_;
  int root_ = 0;
};

SummaryHierarchy build_hierarchy(const ConceptLattice& lattice);

/// Cover edges of strict intent containment, for fixtures that list
/// summaries without edges.
std::map<int, std::vector<int>> derive_children_by_intent(const std::vector<ConceptSummary>& summaries);

struct AlphaSummary {
  int summary_id = 0;
  double alpha = 0.0;
  FuzzyExtent extent;
};

/// Keeps the tuples whose degree is at least alpha.
AlphaSummary alpha_cut(const ConceptSummary& s, double alpha);

/// Hierarchy file layout:
///
///   { "root": 0,
///     "summaries": [ { "id": 0, "name": "z0", "intent": ["Age::Young"],
///                      "extent": {"t1": 0.5}, "children": [1, 2] } ] }
///
/// "name" and "level" are optional; levels are always recomputed. When no
/// summary lists "children", edges are derived from intent containment, and
/// a missing "root" defaults to the summary whose intent is contained in all
/// others.
Json hierarchy_to_json(const SummaryHierarchy& h);
SummaryHierarchy hierarchy_from_json(const Json& j);

}  // namespace fuzzsum
