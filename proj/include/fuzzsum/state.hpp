#pragma once

// Project state: everything a query session needs, persisted as a directory
// of JSON files (schema, context, lattice, hierarchy, meta).

#include <cstdint>
#include <optional>
#include <string>

#include "fuzzsum/clustering.hpp"
#include "fuzzsum/domain.hpp"
#include "fuzzsum/lattice.hpp"
#include "fuzzsum/summary.hpp"

namespace fuzzsum {

struct ProjectState {
  Schema schema;
  std::optional<FuzzyContext> context;  ///< absent for hierarchy fixtures
  std::optional<ConceptLattice> lattice;
  SummaryHierarchy hierarchy;
  double threshold = 0.5;
  std::uint64_t seed = 0;
};

/// Clusters the ordered attributes, builds the fuzzy context and its lattice.
ProjectState build_state(const Dataset& ds, double threshold, std::uint64_t seed = 0);

/// Lattice and hierarchy over a ready-made context.
ProjectState build_state(Schema schema, FuzzyContext ctx, double threshold);

/// One unordered attribute per "Attr::Label" prefix, labels in first-seen
/// order.
Schema schema_from_context(const FuzzyContext& ctx, const std::string& relation);

/// Writes schema.json, hierarchy.json, meta.json and, when present,
/// context.json and lattice.json into dir (created if missing).
void save_state(const ProjectState& state, const std::string& dir);
ProjectState load_state(const std::string& dir);

}  // namespace fuzzsum
