#include "fuzzsum/domain_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "fuzzsum/error.hpp"

namespace fuzzsum {


namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(std::string_view s) {
  std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    double v = std::stod(t, &used);
    if (used != t.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Trapezoid trapezoid_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    throw SchemaError(where + ": trapezoid must be an array [a,b,c,d]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

// Splits one CSV record, honouring double quotes. Returns false at EOF.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::vector<bool>& quoted,
                 int& line_no) {
  fields.clear();
  quoted.clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  ++line_no;
  std::string cur;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0;; ++i) {
    if (i == line.size()) {
      if (in_quotes) {
        std::string next;
        if (!std::getline(in, next)) throw DataError("line " + std::to_string(line_no) + ": unterminated quote");
        ++line_no;
        cur += '\n';
        line = std::move(next);
        i = static_cast<std::size_t>(-1);
        continue;
      }
      break;
    }
    char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      quoted.push_back(was_quoted);
      cur.clear();
      was_quoted = false;
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  quoted.push_back(was_quoted);
  return true;
}

Schema schema_from_json_unchecked(const Json& j) {
  Schema schema;
  if (!j.is_object()) throw SchemaError("schema must be a JSON object");
  schema.relation = j.value("relation", std::string{});
  if (!j.contains("attributes") || !j["attributes"].is_array()) {
    throw SchemaError("schema needs an 'attributes' array");
  }
  for (const auto& ja : j["attributes"]) {
    AttributeSpec a;
    a.name = ja.value("name", std::string{});
    std::string where = "attribute '" + a.name + "'";
    auto ft = parse_ftype(ja.value("ftype", std::string("FTYPE1")));
    if (!ft) throw SchemaError(where + ": unknown ftype");
    a.ftype = *ft;
    int idx = 0;
    for (const auto& jl : ja.value("labels", Json::array())) {
      LinguisticLabel l;
      l.order_index = idx++;
      if (jl.is_string()) {
        l.name = jl.get<std::string>();
      } else {
        l.name = jl.value("name", std::string{});
        if (jl.contains("trapezoid") && !jl["trapezoid"].is_null()) {
          l.trapezoid = trapezoid_from_json(jl["trapezoid"], where + " label '" + l.name + "'");
        }
      }
      a.labels.push_back(std::move(l));
    }
    a.cluster_count = ja.value("cluster_count", static_cast<int>(a.labels.size()));
    if (ja.contains("similarity") && !ja["similarity"].is_null()) {
      a.similarity = ja["similarity"].get<SimilarityMatrix>();
    }
    schema.attributes.push_back(std::move(a));
  }
  return schema;
}

}  // namespace

Schema schema_from_json(const Json& j) {
  Schema schema;
  try {
    schema = schema_from_json_unchecked(j);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed schema: ") + e.what());
  }
  auto violations = validate_schema(schema.attributes);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid schema:";
    for (const auto& v : violations) {
      os << "\n  " << v.attribute;
      if (!v.label.empty()) os << "::" << v.label;
      os << ": " << v.message;
    }
    throw SchemaError(os.str());
  }
  return schema;
}

Json schema_to_json(const Schema& schema) {
  Json attrs = Json::array();
  for (const auto& a : schema.attributes) {
    Json labels = Json::array();
    for (const auto& l : a.labels) {
      Json jl = {{"name", l.name}};
      if (l.trapezoid) jl["trapezoid"] = {l.trapezoid->a, l.trapezoid->b, l.trapezoid->c, l.trapezoid->d};
      labels.push_back(std::move(jl));
    }
    Json ja = {{"name", a.name}, {"ftype", std::string(to_string(a.ftype))},
               {"cluster_count", a.cluster_count}, {"labels", std::move(labels)}};
    if (a.similarity) ja["similarity"] = *a.similarity;
    attrs.push_back(std::move(ja));
  }
  return {{"relation", schema.relation}, {"attributes", std::move(attrs)}};
}

Schema load_schema(const std::string& path) {
  try {
    return schema_from_json(load_json_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

FuzzyValue parse_cell(std::string_view raw) {
  std::string cell = trim(raw);
  if (cell.empty()) return Null{};
  if (cell[0] == '#') {
    std::string up = cell;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "#UNKNOWN") return Unknown{};
    if (up == "#UNDEFINED") return Undefined{};
    if (up == "#NULL") return Null{};
    throw DataError("unknown constant '" + cell + "'");
  }
  if (cell[0] == '$') {
    std::string label = trim(std::string_view(cell).substr(1));
    if (label.empty()) throw DataError("empty label reference");
    return LabelRef{label};
  }
  if (cell[0] == '~') {
    std::vector<double> parts;
    std::string_view rest = std::string_view(cell).substr(1);
    while (true) {
      auto comma = rest.find(',');
      auto num = parse_number(rest.substr(0, comma));
      if (!num) throw DataError("bad trapezoid '" + cell + "'");
      parts.push_back(*num);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (parts.size() != 4) throw DataError("trapezoid needs 4 numbers: '" + cell + "'");
    Trapezoid t{parts[0], parts[1], parts[2], parts[3]};
    if (!t.well_formed()) throw DataError("malformed trapezoid '" + cell + "'");
    return t;
  }
  if (auto num = parse_number(cell)) return Crisp{*num};
  throw DataError("cannot parse cell '" + cell + "'");
}

Dataset read_dataset_csv(std::istream& in, const Schema& schema) {
  Dataset ds;
  ds.schema = schema;
  int line_no = 0;
  std::vector<std::string> fields;
  std::vector<bool> quoted;
  if (!read_record(in, fields, quoted, line_no)) throw DataError("empty CSV: header row missing");

  // Column c of the file feeds schema attribute column_attr[c - 1].
  std::vector<std::size_t> column_attr;
  std::vector<bool> covered(schema.attributes.size(), false);
  for (std::size_t c = 1; c < fields.size(); ++c) {
    std::string name = trim(fields[c]);
    const auto* spec = schema.find(name);
    if (!spec) {
      throw DataError("line 1, column " + std::to_string(c + 1) + ": '" + name +
                      "' is not a schema attribute");
    }
    std::size_t pos = static_cast<std::size_t>(spec - schema.attributes.data());
    if (covered[pos]) throw DataError("line 1: duplicate column '" + name + "'");
    covered[pos] = true;
    column_attr.push_back(pos);
  }
  for (std::size_t j = 0; j < covered.size(); ++j) {
    if (!covered[j]) throw DataError("line 1: missing column for attribute '" + schema.attributes[j].name + "'");
  }

  while (read_record(in, fields, quoted, line_no)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    // Re-join bare trapezoids that the comma split into four fields.
    std::vector<std::string> cells;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      std::string t = trim(fields[f]);
      if (!quoted[f] && !t.empty() && t[0] == '~' && t.find(',') == std::string::npos &&
          f + 3 < fields.size()) {
        t += "," + trim(fields[f + 1]) + "," + trim(fields[f + 2]) + "," + trim(fields[f + 3]);
        f += 3;
      }
      cells.push_back(std::move(t));
    }
    if (cells.size() != column_attr.size() + 1) {
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(column_attr.size() + 1) +
                      " cells, found " + std::to_string(cells.size()));
    }
    std::vector<FuzzyValue> row(schema.attributes.size(), Null{});
    for (std::size_t c = 1; c < cells.size(); ++c) {
      std::size_t pos = column_attr[c - 1];
      const auto& attr = schema.attributes[pos];
      try {
        row[pos] = parse_cell(cells[c]);
      } catch (const DataError& e) {
        throw DataError("line " + std::to_string(line_no) + ", attribute '" + attr.name + "': " + e.what());
      }
      if (const auto* r = std::get_if<LabelRef>(&row[pos]); r && !attr.label_index(r->label)) {
        throw DataError("line " + std::to_string(line_no) + ", attribute '" + attr.name + "': unknown label $" +
                        r->label);
      }
    }
    std::string id = trim(cells[0]);
    if (id.empty()) throw DataError("line " + std::to_string(line_no) + ": empty tuple id");
    if (std::find(ds.tuple_ids.begin(), ds.tuple_ids.end(), id) != ds.tuple_ids.end()) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate tuple id '" + id + "'");
    }
    ds.tuple_ids.push_back(std::move(id));
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

Dataset load_dataset_csv(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return read_dataset_csv(in, schema);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json load_json_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace fuzzsum
