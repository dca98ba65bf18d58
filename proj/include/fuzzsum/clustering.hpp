#pragma once

// Per-attribute Fuzzy C-Means over encoded fuzzy data. The resulting
// membership matrices become the columns of the fuzzy formal context.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzsum/domain.hpp"
#include "fuzzsum/lattice.hpp"

namespace fuzzsum {

/// One encoded attribute column; absent cells (Unknown, Undefined, Null) are
/// std::nullopt.
struct IntermediateColumn {
  std::string attribute;
  std::vector<std::string> tuple_ids;
  std::vector<std::optional<double>> codes;
};

IntermediateColumn encode_dataset(const Dataset& ds, const AttributeSpec& attr);

struct FcmOptions {
  int clusters = 2;
  double fuzzifier = 2.0;
  double tolerance = 1e-6;
  int max_iterations = 300;
  std::uint64_t seed = 0;
};

struct FcmResult {
  std::vector<double> centers;                   ///< ascending
  std::vector<std::vector<double>> memberships;  ///< per input value, per center
  std::vector<double> objective;                 ///< per iteration
  int iterations = 0;
};

/// Standard alternating-optimisation FCM on scalar data with k-means++
/// seeding. Throws ClusteringError on empty input or fewer distinct values
/// than clusters; ConfigError on clusters < 2 or fuzzifier <= 1.
FcmResult fcm(const std::vector<double>& values, const FcmOptions& options);

/// Membership row of x against fixed centers. A point that coincides with
/// one or more centers is shared crisply among them.
std::vector<double> fcm_memberships(double x, const std::vector<double>& centers, double fuzzifier);

double fcm_objective(const std::vector<double>& values, const std::vector<double>& centers,
                     const std::vector<std::vector<double>>& memberships, double fuzzifier);

struct ClusterModel {
  std::string attribute;
  std::vector<double> centers;
  double fuzzifier = 2.0;
  /// label_binding[i] labels centers[i].
  std::vector<std::string> label_binding;
};

/// The i-th smallest center takes the i-th label of the vocabulary.
ClusterModel bind_labels(ClusterModel model, const AttributeSpec& attr);

struct MembershipMatrix {
  std::string attribute;
  std::vector<std::string> tuple_ids;
  /// One row per tuple; all-zero for tuples without a code.
  std::vector<std::vector<double>> rows;
};

struct AttributeClustering {
  ClusterModel model;
  MembershipMatrix matrix;
  FcmResult fit;
};

/// Encodes, clusters and binds one ordered attribute.
AttributeClustering cluster_attribute(const Dataset& ds, const AttributeSpec& attr, FcmOptions options);

/// Clusters every FTYPE1/FTYPE2 attribute of the dataset.
std::vector<AttributeClustering> cluster_dataset(const Dataset& ds, const FcmOptions& base);

/// Objects are tuples, attributes every (attribute, label) pair in schema
/// order. Clustered attributes read the bound membership column; the rest
/// are graded with value_label_membership.
FuzzyContext build_context(const Dataset& ds, const std::vector<ClusterModel>& models,
                           const std::vector<MembershipMatrix>& matrices);

}  // namespace fuzzsum
