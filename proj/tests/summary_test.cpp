#include <gtest/gtest.h>

#include <random>

#include "fuzzsum/error.hpp"
#include "fuzzsum/summary.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace fuzzsum;
using testing_support::id_of;

namespace {

ConceptSummary summary(int id, std::vector<std::string> intent, FuzzyExtent extent = {}) {
  ConceptSummary s;
  s.id = id;
  s.intent = std::move(intent);
  s.extent = std::move(extent);
  return s;
}

std::vector<ConceptSummary> chain() {
  return {summary(0, {}, {{"t1", 1}}), summary(1, {"A::x"}, {{"t1", 0.5}}), summary(2, {"A::x", "B::y"})};
}

}  // namespace

TEST(Hierarchy, EmployeeFixtureEdgesFollowIntents) {
  auto h = testing_support::employee().hierarchy;
  EXPECT_EQ(h.summaries().size(), 15u);
  EXPECT_EQ(h.root(), 0);
  EXPECT_EQ(h.children(0), (std::vector<int>{11, 12, 13}));
  EXPECT_EQ(h.parents(22), (std::vector<int>{12, 13}));
  EXPECT_EQ(h.parents(23), (std::vector<int>{11}));
  EXPECT_EQ(h.children(24), (std::vector<int>{32, 33, 34}));
  EXPECT_EQ(h.parents(5), (std::vector<int>{41, 42}));
  EXPECT_TRUE(h.is_leaf(5));
  EXPECT_EQ(h.at(22).name, "z22");
  EXPECT_EQ(h.at(34).level, 3);
  EXPECT_EQ(h.level(1), (std::vector<int>{11, 12, 13}));
  EXPECT_EQ(h.at(34).labels_of("Income"), (std::vector<std::string>{"Comfortable"}));
  EXPECT_EQ(h.at(24).labels_of("Age"), (std::vector<std::string>{"Young", "Adult"}));
}

TEST(Hierarchy, FoodFixtureLoads) {
  auto h = testing_support::food().hierarchy;
  EXPECT_EQ(h.root(), 1);
  EXPECT_EQ(h.at(id_of(h, "z8")).intent.size(), 16u);
  EXPECT_EQ(h.descendants(h.root()).size(), h.summaries().size() - 1);
}

TEST(Hierarchy, DescendantsAndTopologicalOrder) {
  auto h = testing_support::employee().hierarchy;
  EXPECT_EQ(h.descendants(34), (std::set<int>{42, 5}));
  EXPECT_TRUE(h.descendants(5).empty());
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < h.topological_order().size(); ++i) pos[h.topological_order()[i]] = i;
  EXPECT_EQ(pos.size(), h.summaries().size());
  for (const auto& s : h.summaries()) {
    for (int c : h.children(s.id)) EXPECT_LT(pos[s.id], pos[c]);
  }
}

TEST(Hierarchy, DescendantsMatchIntentContainmentOnRandomHierarchies) {
  std::mt19937_64 rng(21);
  for (int run = 0; run < 50; ++run) {
    auto h = oracle::random_hierarchy(rng, 12);
    for (const auto& a : h.summaries()) {
      std::set<int> want;
      for (const auto& b : h.summaries()) {
        if (a.id != b.id && std::includes(b.intent.begin(), b.intent.end(), a.intent.begin(), a.intent.end())) {
          want.insert(b.id);
        }
      }
      EXPECT_EQ(h.descendants(a.id), want);
    }
  }
}

TEST(Hierarchy, RejectsBadGraphs) {
  EXPECT_THROW(SummaryHierarchy(chain(), {{0, {1}}, {1, {0}}}, 0), DataError);
  EXPECT_THROW(SummaryHierarchy(chain(), {{0, {1}}}, 0), DataError);
  EXPECT_THROW(SummaryHierarchy(chain(), {{1, {2}}, {2, {0}}}, 1), DataError);
  EXPECT_THROW(SummaryHierarchy(chain(), {{0, {1}}, {1, {7}}}, 0), DataError);
  SummaryHierarchy h(chain(), {{0, {1}}, {1, {2}}}, 0);
  EXPECT_THROW(h.at(9), UsageError);
  EXPECT_EQ(h.find(9), nullptr);
  EXPECT_EQ(h.find_by_name("nope"), nullptr);
}

TEST(Hierarchy, FromLattice) {
  FuzzyContext ctx = context_from_json(load_json_file(testing_support::fixture("documents_context.json")));
  ConceptLattice l = build_lattice(enumerate_concepts(ctx, 0.5), 0.5);
  auto h = build_hierarchy(l);
  EXPECT_EQ(h.root(), l.top);
  EXPECT_EQ(h.summaries().size(), l.concepts.size());
  for (const auto& [child, parent] : l.covers) {
    const auto& cs = h.children(parent);
    EXPECT_NE(std::find(cs.begin(), cs.end(), child), cs.end());
  }
}

TEST(AlphaCut, KeepsDegreesAtLeastAlpha) {
  auto s = summary(3, {"A::x"}, {{"t1", 0.2}, {"t2", 0.5}, {"t3", 0.9}});
  auto cut = alpha_cut(s, 0.5);
  EXPECT_EQ(cut.summary_id, 3);
  ASSERT_EQ(cut.extent.size(), 2u);
  EXPECT_EQ(cut.extent[0].object, "t2");
  EXPECT_EQ(alpha_cut(s, 0.0).extent.size(), 3u);
  EXPECT_TRUE(alpha_cut(s, 0.95).extent.empty());
}

TEST(AlphaCut, ShrinksAsAlphaGrows) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0, 1);
  for (int run = 0; run < 100; ++run) {
    ConceptSummary s = summary(0, {});
    for (int t = 0; t < 10; ++t) s.extent.push_back({"t" + std::to_string(t), u(rng)});
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_GE(alpha_cut(s, a).extent.size(), alpha_cut(s, b).extent.size());
  }
}

TEST(HierarchyIo, RoundTripAndRootDefault) {
  auto h = testing_support::employee().hierarchy;
  Json j = hierarchy_to_json(h);
  EXPECT_EQ(hierarchy_to_json(hierarchy_from_json(j)).dump(), j.dump());

  Json bare = Json::parse(R"({"summaries": [
      {"id": 4, "intent": ["A::x"], "extent": ["t1"]},
      {"id": 9, "intent": [], "extent": ["t1", "t2"]}]})");
  auto d = hierarchy_from_json(bare);
  EXPECT_EQ(d.root(), 9);
  EXPECT_EQ(d.children(9), (std::vector<int>{4}));

  Json dup = Json::parse(R"({"summaries": [
      {"id": 1, "intent": [], "extent": []},
      {"id": 2, "intent": ["A::x"], "extent": []},
      {"id": 3, "intent": ["A::x"], "extent": []}]})");
  EXPECT_THROW(hierarchy_from_json(dup), DataError);
}
