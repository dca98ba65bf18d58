#pragma once

// Fuzzy formal concept analysis.
//
// A fuzzy context grades every (object, attribute) pair in [0,1]. Under a
// confidence threshold T the derivation operators treat a pair as incident
// when its degree is at least T; a concept's extent then carries, for each
// object, the minimum degree over the intent.

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzsum/json.hpp"

namespace fuzzsum {

/// Context attributes are (attribute, label) pairs written "Attr::Label".
std::string make_key(std::string_view attribute, std::string_view label);
std::pair<std::string, std::string> split_key(std::string_view key);

using ObjectSet = boost::dynamic_bitset<>;
using AttributeSet = boost::dynamic_bitset<>;

struct FuzzyContext {
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
  /// Row-major |objects| x |attributes| matrix.
  std::vector<double> degrees;

  std::size_t object_count() const { return objects.size(); }
  std::size_t attribute_count() const { return attributes.size(); }
  double at(std::size_t g, std::size_t m) const { return degrees[g * attributes.size() + m]; }
  double& at(std::size_t g, std::size_t m) { return degrees[g * attributes.size() + m]; }

  std::size_t object_index(std::string_view name) const;
  std::size_t attribute_index(std::string_view key) const;

  /// Throws ContextError on inconsistent dimensions, duplicates or degrees
  /// outside [0,1].
  void validate() const;
};

struct ExtentEntry {
  std::string object;
  double degree = 0.0;
  friend bool operator==(const ExtentEntry&, const ExtentEntry&) = default;
};

/// Objects with their membership degrees, in context order.
using FuzzyExtent = std::vector<ExtentEntry>;

/// Sigma-count Jaccard index of two fuzzy sets: sum of pointwise minima over
/// sum of pointwise maxima. Zero when both are empty.
double sigma_jaccard(const FuzzyExtent& a, const FuzzyExtent& b);
double sigma_count(const FuzzyExtent& e);

struct FuzzyConcept {
  int id = 0;
  FuzzyExtent extent;
  std::vector<std::string> intent;

  std::vector<std::string> crisp_extent() const;
};

// Derivation operators. The set-valued overloads take and return bitsets over
// context positions; the name-valued ones validate names and throw
// ContextError on unknown entries.
AttributeSet derive_intent(const FuzzyContext& ctx, const ObjectSet& objects, double threshold);
ObjectSet derive_extent(const FuzzyContext& ctx, const AttributeSet& attributes, double threshold);
std::vector<std::string> derive_intent(const FuzzyContext& ctx, const std::vector<std::string>& objects,
                                       double threshold);
std::vector<std::string> derive_extent(const FuzzyContext& ctx, const std::vector<std::string>& attributes,
                                       double threshold);

enum class Enumeration {
  Auto,           ///< subset closure below 20 objects, NextClosure above
  SubsetClosure,  ///< close every subset of the objects
  NextClosure,    ///< Ganter's lectic enumeration of closed intents
};

/// All concepts of ctx at threshold T, sorted by (|intent|, intent positions)
/// with ids assigned in that order.
std::vector<FuzzyConcept> enumerate_concepts(const FuzzyContext& ctx, double threshold,
                                             Enumeration strategy = Enumeration::Auto);

struct ConceptLattice {
  double threshold = 0.0;
  std::vector<FuzzyConcept> concepts;
  /// Covering relation as (child id, parent id).
  std::vector<std::pair<int, int>> covers;
  int top = 0;
  int bottom = 0;

  const FuzzyConcept& concept_by_id(int id) const;
  bool is_cover(int child, int parent) const;
  std::vector<int> parents(int id) const;
  std::vector<int> children(int id) const;
};

/// Orders a complete concept set by extent inclusion and keeps the
/// transitive reduction. Throws ContextError on duplicate concepts or when
/// no unique top/bottom exists.
ConceptLattice build_lattice(std::vector<FuzzyConcept> concepts, double threshold);

double similarity(const FuzzyConcept& a, const FuzzyConcept& b);

/// Similarity measured along a cover edge; throws UsageError otherwise.
double fuzzy_score(const ConceptLattice& lattice, int child, int parent);

Json context_to_json(const FuzzyContext& ctx);
FuzzyContext context_from_json(const Json& j);
Json extent_to_json(const FuzzyExtent& extent);
FuzzyExtent extent_from_json(const Json& j);
Json lattice_to_json(const ConceptLattice& lattice);
ConceptLattice lattice_from_json(const Json& j);

}  // namespace fuzzsum
