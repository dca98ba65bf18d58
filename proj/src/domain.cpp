#include "fuzzsum/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(FType t) {
  switch (t) {
    case FType::Ftype1: return "FTYPE1";
    case FType::Ftype2: return "FTYPE2";
    case FType::Ftype3: return "FTYPE3";
    case FType::Ftype4: return "FTYPE4";
  }
  return "FTYPE1";
}

std::optional<FType> parse_ftype(std::string_view text) {
  for (FType t : {FType::Ftype1, FType::Ftype2, FType::Ftype3, FType::Ftype4}) {
    if (iequals(text, to_string(t))) return t;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSpec::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].name == label) return i;
  }
  return std::nullopt;
}

const LinguisticLabel* AttributeSpec::find_label(std::string_view label) const {
  auto idx = label_index(label);
  return idx ? &labels[*idx] : nullptr;
}

const AttributeSpec* Schema::find(std::string_view attribute) const {
  for (const auto& a : attributes) {
    if (a.name == attribute) return &a;
  }
  return nullptr;
}

const AttributeSpec* Schema::find_ci(std::string_view attribute) const {
  if (const auto* exact = find(attribute)) return exact;
  for (const auto& a : attributes) {
    if (iequals(a.name, attribute)) return &a;
  }
  return nullptr;
}

const AttributeSpec& Schema::at(std::string_view attribute) const {
  if (const auto* a = find(attribute)) return *a;
  throw SchemaError("unknown attribute '" + std::string(attribute) + "'");
}

std::string to_string(const FuzzyValue& v) {
  struct Visitor {
    std::string operator()(const Crisp& c) const { return format_number(c.value); }
    std::string operator()(const Trapezoid& t) const {
      return "~" + format_number(t.a) + "," + format_number(t.b) + "," + format_number(t.c) + "," +
             format_number(t.d);
    }
    std::string operator()(const LabelRef& l) const { return "$" + l.label; }
    std::string operator()(const Unknown&) const { return "#UNKNOWN"; }
    std::string operator()(const Undefined&) const { return "#UNDEFINED"; }
    std::string operator()(const Null&) const { return "#NULL"; }
  };
  return std::visit(Visitor{}, v);
}

std::size_t Dataset::attribute_position(std::string_view attribute) const {
  for (std::size_t j = 0; j < schema.attributes.size(); ++j) {
    if (schema.attributes[j].name == attribute) return j;
  }
  throw SchemaError("unknown attribute '" + std::string(attribute) + "'");
}

const FuzzyValue& Dataset::value(std::size_t row, std::string_view attribute) const {
  return rows.at(row).at(attribute_position(attribute));
}

double trapezoid_membership(double x, const Trapezoid& s) {
  if (!s.well_formed()) {
    throw ConfigError("malformed trapezoid (" + format_number(s.a) + "," + format_number(s.b) + "," +
                      format_number(s.c) + "," + format_number(s.d) + ")");
  }
  if (x < s.a || x > s.d) return 0.0;
  if (x >= s.b && x <= s.c) return 1.0;
  if (x < s.b) return (x - s.a) / (s.b - s.a);  // a < x < b, so b > a
  return (s.d - x) / (s.d - s.c);
}

double trapezoid_possibility(const Trapezoid& p, const Trapezoid& q) {
  if (!p.well_formed() || !q.well_formed()) throw ConfigError("malformed trapezoid");
  if (std::max(p.b, q.b) <= std::min(p.c, q.c)) return 1.0;
  // Cores are disjoint: the supremum sits where the falling ramp of the left
  // shape crosses the rising ramp of the right one.
  const Trapezoid& left = p.c < q.b ? p : q;
  const Trapezoid& right = p.c < q.b ? q : p;
  if (left.d <= right.a) return 0.0;
  double height = (left.d - right.a) / ((left.d - left.c) + (right.b - right.a));
  return std::clamp(height, 0.0, 1.0);
}

double value_label_membership(const FuzzyValue& v, const LinguisticLabel& label,
                              const AttributeSpec& attr) {
  auto idx = attr.label_index(label.name);
  if (!idx) {
    throw SchemaError("label '" + label.name + "' is not defined on attribute '" + attr.name + "'");
  }
  const LinguisticLabel& own = attr.labels[*idx];

  auto need_shape = [&]() -> const Trapezoid& {
    if (!own.trapezoid) {
      throw ConfigError("attribute '" + attr.name + "' label '" + own.name +
                        "' has no trapezoid; numeric values cannot be graded");
    }
    return *own.trapezoid;
  };

  if (const auto* c = std::get_if<Crisp>(&v)) return trapezoid_membership(c->value, need_shape());
  if (const auto* t = std::get_if<Trapezoid>(&v)) return trapezoid_possibility(*t, need_shape());
  if (const auto* ref = std::get_if<LabelRef>(&v)) {
    auto from = attr.label_index(ref->label);
    if (!from) {
      throw SchemaError("value $" + ref->label + " is not a label of attribute '" + attr.name + "'");
    }
    if (attr.ftype == FType::Ftype3 && attr.similarity) return (*attr.similarity)[*from][*idx];
    return *from == *idx ? 1.0 : 0.0;
  }
  if (std::holds_alternative<Unknown>(v)) return 1.0;
  return 0.0;  // Undefined, Null
}

std::vector<SchemaViolation> validate_schema(const std::vector<AttributeSpec>& attributes) {
  std::vector<SchemaViolation> out;
  std::set<std::string> attr_names;
  for (const auto& a : attributes) {
    auto add = [&](std::string label, std::string msg) {
      out.push_back({a.name, std::move(label), std::move(msg)});
    };
    if (a.name.empty()) add("", "empty attribute name");
    if (!attr_names.insert(a.name).second) add("", "duplicate attribute");
    if (a.labels.empty()) add("", "attribute has no labels");
    if (a.cluster_count < 1) add("", "cluster_count must be positive");
    if (a.clustered() && a.cluster_count != static_cast<int>(a.labels.size())) {
      add("", "cluster_count " + std::to_string(a.cluster_count) + " differs from label count " +
                  std::to_string(a.labels.size()));
    }

    std::set<std::string> label_names;
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
      const auto& l = a.labels[i];
      if (l.name.empty()) add("", "empty label name");
      if (!label_names.insert(l.name).second) add(l.name, "duplicate label");
      if (l.order_index != static_cast<int>(i)) add(l.name, "order_index does not match position");
      if (l.trapezoid && !l.trapezoid->well_formed()) add(l.name, "malformed trapezoid");
    }

    if (a.similarity) {
      const auto& s = *a.similarity;
      if (a.ftype != FType::Ftype3) add("", "similarity matrix only allowed on FTYPE3");
      std::size_t n = a.labels.size();
      bool square = s.size() == n &&
                    std::all_of(s.begin(), s.end(), [n](const auto& row) { return row.size() == n; });
      if (!square) {
        add("", "similarity matrix must be " + std::to_string(n) + "x" + std::to_string(n));
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          if (s[i][i] != 1.0) add(a.labels[i].name, "similarity diagonal must be 1");
          for (std::size_t j = 0; j < n; ++j) {
            if (!(s[i][j] >= 0.0 && s[i][j] <= 1.0)) {
              add(a.labels[i].name, "similarity outside [0,1]");
            } else if (j > i && s[i][j] != s[j][i]) {
              add(a.labels[i].name, "similarity matrix not symmetric");
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<SchemaViolation> validate_dataset(const Dataset& ds) {
  std::vector<SchemaViolation> out = validate_schema(ds.schema.attributes);
  if (ds.rows.size() != ds.tuple_ids.size()) {
    out.push_back({"", "", "row count differs from tuple id count"});
    return out;
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const auto& id = ds.tuple_ids[i];
    if (!seen.insert(id).second) out.push_back({"", id, "duplicate tuple id"});
    if (ds.rows[i].size() != ds.schema.attributes.size()) {
      out.push_back({"", id, "row has wrong number of values"});
      continue;
    }
    for (std::size_t j = 0; j < ds.rows[i].size(); ++j) {
      const auto& attr = ds.schema.attributes[j];
      const auto& v = ds.rows[i][j];
      if (const auto* t = std::get_if<Trapezoid>(&v); t && !t->well_formed()) {
        out.push_back({attr.name, id, "malformed trapezoid value"});
      }
      if (const auto* r = std::get_if<LabelRef>(&v); r && !attr.label_index(r->label)) {
        out.push_back({attr.name, id, "unknown label $" + r->label});
      }
    }
  }
  return out;
}

}  // namespace fuzzsum
