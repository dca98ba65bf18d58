#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fuzzsum/clustering.hpp"
#include "fuzzsum/domain_io.hpp"
#include "fuzzsum/error.hpp"
#include "test_support.hpp"

using namespace fuzzsum;

namespace {

// One alternating step computed from the update equations directly.
std::vector<double> step_centers(const std::vector<double>& x, const std::vector<double>& v, double m) {
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    double num = 0, den = 0;
    for (double xi : x) {
      double s = 0;
      for (double vk : v) s += std::pow(std::abs(xi - v[j]) / std::abs(xi - vk), 2.0 / (m - 1.0));
      double w = std::pow(1.0 / s, m);
      num += w * xi;
      den += w;
    }
    out[j] = num / den;
  }
  return out;
}

Dataset employee_data() {
  Schema s = load_schema(testing_support::fixture("employee_schema.json"));
  return load_dataset_csv(testing_support::fixture("employee.csv"), s);
}

}  // namespace

TEST(Fcm, MembershipsOfACoincidentPointAreSharedCrisply) {
  auto u = fcm_memberships(2.0, {2.0, 5.0, 2.0}, 2.0);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  EXPECT_DOUBLE_EQ(u[1], 0.0);
  EXPECT_DOUBLE_EQ(u[2], 0.5);
}

TEST(Fcm, MembershipsFollowInverseSquaredDistanceForM2) {
  // Distances 1 and 3: weights 1 and 1/9.
  auto u = fcm_memberships(1.0, {0.0, 4.0}, 2.0);
  EXPECT_NEAR(u[0], 0.9, 1e-12);
  EXPECT_NEAR(u[1], 0.1, 1e-12);
}

TEST(Fcm, SymmetricPairsConvergeToAStationaryPoint) {
  std::vector<double> x = {0, 0.1, 5, 5.1, 10, 10.1};
  FcmOptions opt;
  opt.clusters = 3;
  opt.tolerance = 1e-12;
  opt.max_iterations = 1000;
  FcmResult r = fcm(x, opt);
  ASSERT_EQ(r.centers.size(), 3u);
  // Data are symmetric around 5.05.
  EXPECT_NEAR(r.centers[1], 5.05, 1e-6);
  EXPECT_NEAR(r.centers[0] + r.centers[2], 10.1, 1e-6);
  EXPECT_NEAR(r.centers[0], 0.05, 0.05);
  auto again = step_centers(x, r.centers, 2.0);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(again[j], r.centers[j], 1e-8);
}

TEST(Fcm, RowSumsAndMonotoneObjectiveOnRandomData) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int run = 0; run < 30; ++run) {
    std::vector<double> x(40);
    for (auto& v : x) v = u(rng);
    FcmOptions opt;
    opt.clusters = 2 + run % 4;
    opt.seed = static_cast<std::uint64_t>(run);
    opt.fuzzifier = 1.5 + 0.25 * (run % 3);
    FcmResult r = fcm(x, opt);
    EXPECT_TRUE(std::is_sorted(r.centers.begin(), r.centers.end()));
    for (const auto& row : r.memberships) {
      double s = 0;
      for (double d : row) {
        EXPECT_GE(d, 0.0);
        s += d;
      }
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
    for (std::size_t i = 1; i < r.objective.size(); ++i) {
      EXPECT_LE(r.objective[i], r.objective[i - 1] * (1 + 1e-12));
    }
  }
}

TEST(Fcm, ShuffledInputGivesIdenticalCentersAndPerValueMemberships) {
  std::vector<double> x = {3, 10, 5, 20, 7, 12, 1, 15};
  FcmOptions opt;
  opt.clusters = 3;
  FcmResult a = fcm(x, opt);
  std::vector<std::size_t> perm = {4, 1, 7, 0, 2, 6, 3, 5};
  std::vector<double> y;
  for (auto i : perm) y.push_back(x[i]);
  FcmResult b = fcm(y, opt);
  EXPECT_EQ(a.centers, b.centers);
  for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(b.memberships[i], a.memberships[perm[i]]);
}

TEST(Fcm, SeedDeterminism) {
  std::vector<double> x = {1, 2, 3, 8, 9, 10, 20, 21};
  FcmOptions opt;
  opt.clusters = 3;
  opt.seed = 99;
  FcmResult a = fcm(x, opt), b = fcm(x, opt);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.memberships, b.memberships);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(Fcm, RejectsBadConfigurationAndData) {
  FcmOptions opt;
  opt.clusters = 1;
  EXPECT_THROW(fcm({1, 2}, opt), ConfigError);
  opt.clusters = 2;
  opt.fuzzifier = 1.0;
  EXPECT_THROW(fcm({1, 2}, opt), ConfigError);
  opt.fuzzifier = 2.0;
  EXPECT_THROW(fcm({}, opt), ClusteringError);
  EXPECT_THROW(fcm({4, 4, 4}, opt), ClusteringError);
  EXPECT_THROW(fcm({1, NAN}, opt), ClusteringError);
}

TEST(Encoding, CodesFollowValueKinds) {
  Dataset ds = employee_data();
  ds.rows[0][2] = Trapezoid{2, 4, 6, 8};
  ds.rows[1][2] = Unknown{};
  ds.rows[2][2] = LabelRef{"Senior"};
  auto col = encode_dataset(ds, ds.schema.at("ProfessionalBackground"));
  EXPECT_EQ(col.codes[0], 5.0);
  EXPECT_FALSE(col.codes[1].has_value());
  EXPECT_EQ(col.codes[2], 2.0);
  EXPECT_EQ(col.codes[3], 20.0);
}

TEST(Binding, SmallestCenterTakesFirstLabel) {
  Dataset ds = employee_data();
  ClusterModel m;
  m.centers = {1, 2, 3};
  auto bound = bind_labels(m, ds.schema.at("ProfessionalBackground"));
  EXPECT_EQ(bound.label_binding, (std::vector<std::string>{"Junior", "Intermediate", "Senior"}));
  m.centers = {1, 2};
  EXPECT_THROW(bind_labels(m, ds.schema.at("ProfessionalBackground")), ConfigError);
}

TEST(Context, EmployeeColumnsAndSpecialValues) {
  Dataset ds = employee_data();
  ds.rows[5][2] = Unknown{};
  ds.rows[4][2] = Null{};
  auto clusterings = cluster_dataset(ds, FcmOptions{});
  ASSERT_EQ(clusterings.size(), 1u);
  std::vector<ClusterModel> models{clusterings[0].model};
  std::vector<MembershipMatrix> matrices{clusterings[0].matrix};
  FuzzyContext ctx = build_context(ds, models, matrices);
  ASSERT_EQ(ctx.attributes.size(), 9u);
  EXPECT_EQ(ctx.attributes[0], "Age::Young");
  const auto young = ctx.attribute_index("Age::Young");
  const auto adult = ctx.attribute_index("Age::Adult");
  EXPECT_DOUBLE_EQ(ctx.at(0, adult), 1.0);
  EXPECT_DOUBLE_EQ(ctx.at(0, young), 0.3);
  for (const char* l : {"Junior", "Intermediate", "Senior"}) {
    EXPECT_DOUBLE_EQ(ctx.at(5, ctx.attribute_index(std::string("ProfessionalBackground::") + l)), 1.0);
    EXPECT_DOUBLE_EQ(ctx.at(4, ctx.attribute_index(std::string("ProfessionalBackground::") + l)), 0.0);
  }
  // T3 (3 years) is the most junior tuple.
  EXPECT_GT(ctx.at(2, ctx.attribute_index("ProfessionalBackground::Junior")), 0.5);
  EXPECT_GT(ctx.at(3, ctx.attribute_index("ProfessionalBackground::Senior")), 0.5);
}
