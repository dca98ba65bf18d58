#include <gtest/gtest.h>

#include "fuzzsum/error.hpp"
#include "fuzzsum/query.hpp"
#include "test_support.hpp"

using namespace fuzzsum;

namespace {

const Schema& employee() {
  static const Schema s = testing_support::employee().schema;
  return s;
}

const Schema& food() {
  static const Schema s = testing_support::food().schema;
  return s;
}

// Numeric Age with four ordered labels.
Schema ordered_age() {
  Schema s;
  s.relation = "People";
  AttributeSpec age{"Age", FType::Ftype1, {}, 4, std::nullopt};
  const char* names[] = {"Child", "Young", "Adult", "Old"};
  for (int i = 0; i < 4; ++i) {
    age.labels.push_back({names[i], i, Trapezoid{i * 20.0, i * 20.0 + 5, i * 20.0 + 15, i * 20.0 + 20}});
  }
  s.attributes.push_back(age);
  return s;
}

Condition cond(Comparator c, std::vector<std::string> labels) { return {"Age", c, std::move(labels), std::nullopt}; }

template <class E>
void expect_position(std::string_view text, const Schema& schema, int line, int column) {
  try {
    parse_query(text, schema);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

void expect_semantic(std::string_view text, const Schema& schema, std::string_view fragment) {
  try {
    parse_query(text, schema);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const SemanticError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Comparators, NamesRoundTrip) {
  for (auto c : {Comparator::FEQ, Comparator::FGEQ, Comparator::MLT, Comparator::NFEQ, Comparator::NMGT}) {
    EXPECT_EQ(parse_comparator(to_string(c)), c);
  }
  EXPECT_EQ(parse_comparator("fgeq"), Comparator::FGEQ);
  EXPECT_FALSE(parse_comparator("EQ"));
  EXPECT_TRUE(is_necessity(Comparator::NFLT));
  EXPECT_FALSE(is_necessity(Comparator::MGT));
  EXPECT_FALSE(is_order_based(Comparator::FEQ));
  EXPECT_TRUE(is_order_based(Comparator::NMLT));
}

TEST(Parse, SingleCondition) {
  Query q = parse_query("Select Income, ProfessionalBackground From Employee Where Age FEQ $Young THOLD 0.5;", employee());
  EXPECT_FALSE(q.k);
  EXPECT_FALSE(q.select_all);
  EXPECT_EQ(q.projection, (std::vector<std::string>{"Income", "ProfessionalBackground"}));
  EXPECT_EQ(q.relation, "Employee");
  ASSERT_EQ(q.conditions.size(), 1u);
  EXPECT_EQ(q.conditions[0], (Condition{"Age", Comparator::FEQ, {"Young"}, 0.5}));
}

TEST(Parse, TopKPrefixAndLabelLists) {
  Query q = parse_query(
      "Select 3 0.25 Dairy-product, Lipid From Food-consumption Where Age FEQ ($Old) THOLD 0.25 AND Candy FEQ "
      "($Excessive) THOLD 0.25;",
      food());
  EXPECT_EQ(q.k, 3);
  EXPECT_EQ(q.alpha_override, 0.25);
  EXPECT_EQ(q.conditions.size(), 2u);
  EXPECT_EQ(q.conditions[1].attribute, "Candy");
  EXPECT_EQ(q.condition_for("Candy")->labels, (std::vector<std::string>{"Excessive"}));
  EXPECT_EQ(q.condition_for("Lipid"), nullptr);
}

TEST(Parse, CaseInsensitiveNamesTakeSchemaSpelling) {
  Query a = parse_query("select * from employee where age feq ($young, $ADULT) and INCOME feq $poor", employee());
  Query b = parse_query("SELECT * FROM Employee WHERE Age FEQ ($Young, $Adult) AND Income FEQ $Poor;", employee());
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.select_all);
  EXPECT_FALSE(a.conditions[0].thold);
}

TEST(Parse, WhereIsOptional) {
  Query q = parse_query("SELECT * FROM Employee", employee());
  EXPECT_TRUE(q.conditions.empty());
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  expect_position<ParseError>("SELECT FROM Employee", employee(), 1, 8);
  expect_position<ParseError>("SELECT *\nFROM Employee WHERE Age $Young", employee(), 2, 25);
  expect_position<ParseError>("SELECT * FROM Employee WHERE Age FEQ ($Young", employee(), 1, 45);
  expect_position<ParseError>("SELECT * FROM Employee WHERE Age FEQ $Young THOLD", employee(), 1, 50);
  EXPECT_THROW(parse_query("SELECT 0 * FROM Employee", employee()), ParseError);
  EXPECT_THROW(parse_query("SELECT 2.5 * FROM Employee", employee()), ParseError);
  EXPECT_THROW(parse_query("SELECT 2 1.5 * FROM Employee", employee()), ParseError);
  EXPECT_THROW(parse_query("SELECT * FROM Employee WHERE Age FEQ $Young THOLD 2", employee()), ParseError);
  EXPECT_THROW(parse_query("SELECT * FROM Employee; extra", employee()), ParseError);
  EXPECT_THROW(parse_query("SELECT * FROM Employee WHERE Age FEQ $Young @", employee()), ParseError);
}

TEST(Parse, SemanticErrors) {
  expect_semantic("SELECT * FROM Staff", employee(), "relation");
  expect_semantic("SELECT * FROM Employee WHERE Height FEQ $Tall", employee(), "Height");
  expect_semantic("SELECT * FROM Employee WHERE Age FEQ $Ancient", employee(), "Ancient");
  expect_semantic("SELECT * FROM Employee WHERE Age FEQ $Young AND age FEQ $Old", employee(), "Age");
  expect_semantic("SELECT Income, income FROM Employee", employee(), "Income");
  expect_semantic("SELECT * FROM Employee WHERE Age FEQ $Ancient", employee(), "line 1, column 39");
}

TEST(Parse, CanonicalTextRoundTrips) {
  const char* texts[] = {
      "select 5 * from employee where age feq ($young, $adult) thold 0.3 and income feq $poor",
      "SELECT Income FROM Employee WHERE Age FEQ $Old",
      "SELECT 2 0.125 * FROM Employee",
      "SELECT ProfessionalBackground FROM Employee WHERE ProfessionalBackground FGEQ $Intermediate THOLD 0.75",
  };
  for (const char* t : texts) {
    Query q = parse_query(t, employee());
    EXPECT_EQ(parse_query(to_text(q), employee()), q) << to_text(q);
    EXPECT_EQ(to_text(parse_query(to_text(q), employee())), to_text(q));
  }
  EXPECT_EQ(to_text(parse_query("select income from employee where age feq ($adult, $young) thold 0.25", employee())),
            "SELECT Income FROM Employee WHERE Age FEQ ($Adult, $Young) THOLD 0.25;");
}

TEST(Resolve, FeqListsInVocabularyOrder) {
  Schema s = ordered_age();
  EXPECT_EQ(resolve_comparator(cond(Comparator::FEQ, {"Old", "Child"}), s.at("Age")),
            (std::vector<std::string>{"Child", "Old"}));
}

TEST(Resolve, OrderComparators) {
  const Schema s = ordered_age();
  const AttributeSpec& age = s.at("Age");
  using V = std::vector<std::string>;
  EXPECT_EQ(resolve_comparator(cond(Comparator::FGEQ, {"Adult"}), age), (V{"Adult", "Old"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::FGT, {"Young"}), age), (V{"Adult", "Old"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::FLEQ, {"Young"}), age), (V{"Child", "Young"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::FLT, {"Young"}), age), (V{"Child"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::MGT, {"Young"}), age), (V{"Old"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::MLT, {"Old"}), age), (V{"Child", "Young"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::FGEQ, {"Child", "Adult"}), age), (V{"Adult", "Old"}));
  EXPECT_EQ(resolve_comparator(cond(Comparator::FLEQ, {"Young", "Adult"}), age), (V{"Child", "Young"}));
}

TEST(Resolve, RejectedForms) {
  const Schema s = ordered_age();
  const AttributeSpec& age = s.at("Age");
  EXPECT_THROW(resolve_comparator(cond(Comparator::NFEQ, {"Adult"}), age), UnsupportedComparator);
  EXPECT_THROW(resolve_comparator(cond(Comparator::MGT, {"Adult"}), age), EmptySelection);
  EXPECT_THROW(resolve_comparator(cond(Comparator::FGT, {"Old"}), age), EmptySelection);
  EXPECT_THROW(resolve_comparator(cond(Comparator::FLT, {"Child"}), age), EmptySelection);
  EXPECT_THROW(resolve_comparator(cond(Comparator::FGEQ, {"Adult"}), employee().at("Age")), SemanticError);
}

TEST(Partition, InputsAndOutputsAreDisjointAndCover) {
  for (const char* t : {"SELECT * FROM Employee WHERE Age FEQ $Young",
                        "SELECT Age, Income FROM Employee WHERE Age FEQ $Young",
                        "SELECT * FROM Employee"}) {
    Query q = parse_query(t, employee());
    auto p = partition_attributes(q, employee());
    std::set<std::string> in(p.inputs.begin(), p.inputs.end()), out(p.outputs.begin(), p.outputs.end());
    for (const auto& a : in) EXPECT_FALSE(out.count(a));
    if (q.select_all) EXPECT_EQ(in.size() + out.size(), employee().attributes.size());
  }
  auto p = partition_attributes(parse_query("SELECT Age, Income FROM Employee WHERE Age FEQ $Young", employee()),
                                employee());
  EXPECT_EQ(p.inputs, (std::vector<std::string>{"Age"}));
  EXPECT_EQ(p.outputs, (std::vector<std::string>{"Income"}));
}

TEST(Alpha, DefaultsAndOverride) {
  EXPECT_DOUBLE_EQ(default_alpha(parse_query("SELECT * FROM Employee WHERE Age FEQ $Young", employee()), employee()),
                   1.0 / 3.0);
  EXPECT_DOUBLE_EQ(default_alpha(parse_query("SELECT * FROM Food-consumption WHERE Age FEQ $Old", food()), food()),
                   0.25);
  EXPECT_DOUBLE_EQ(default_alpha(parse_query("SELECT 2 0.5 * FROM Employee WHERE Age FEQ $Old", employee()), employee()),
                   0.5);
  EXPECT_DOUBLE_EQ(default_alpha(parse_query("SELECT * FROM Employee", employee()), employee()), 0.0);
}

TEST(Rewrite, ClausesFollowConditions) {
  Query q = parse_query("SELECT 2 0.4 * FROM Employee WHERE Age FEQ ($Adult, $Young) THOLD 0.3 AND Income FEQ $Poor",
                        employee());
  ConjunctiveProposition p = rewrite(q, employee());
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_EQ(p.clauses[0], (Clause{"Age", {"Young", "Adult"}, 0.4}));
  EXPECT_EQ(p.clauses[1], (Clause{"Income", {"Poor"}, 0.4}));
  EXPECT_DOUBLE_EQ(p.max_alpha(), 0.4);

  ConjunctiveProposition t = rewrite(parse_query("SELECT * FROM Employee WHERE Age FEQ $Old THOLD 0.7 AND Income FEQ $Poor",
                                                 employee()),
                                     employee());
  EXPECT_DOUBLE_EQ(t.find("Age")->alpha, 0.7);
  EXPECT_DOUBLE_EQ(t.find("Income")->alpha, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.max_alpha(), 0.7);
  EXPECT_DOUBLE_EQ(ConjunctiveProposition{}.max_alpha(), 0.0);
}

TEST(Rewrite, EmptySelectionSurfaces) {
  Schema s = ordered_age();
  EXPECT_THROW(rewrite(parse_query("SELECT * FROM People WHERE Age MGT $Adult", s), s), EmptySelection);
  EXPECT_THROW(rewrite(parse_query("SELECT * FROM People WHERE Age NFEQ $Adult", s), s), UnsupportedComparator);
  EXPECT_EQ(rewrite(parse_query("SELECT * FROM People WHERE Age FLEQ $Young", s), s).clauses[0].labels,
            (std::vector<std::string>{"Child", "Young"}));
}
