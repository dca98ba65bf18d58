#include "fuzzsum/query.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <utility>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

constexpr std::array<std::pair<Comparator, std::string_view>, 14> kComparators{{
    {Comparator::FEQ, "FEQ"},     {Comparator::FGT, "FGT"},     {Comparator::FGEQ, "FGEQ"},
    {Comparator::FLT, "FLT"},     {Comparator::FLEQ, "FLEQ"},   {Comparator::MGT, "MGT"},
    {Comparator::MLT, "MLT"},     {Comparator::NFEQ, "NFEQ"},   {Comparator::NFGT, "NFGT"},
    {Comparator::NFGEQ, "NFGEQ"}, {Comparator::NFLT, "NFLT"},   {Comparator::NFLEQ, "NFLEQ"},
    {Comparator::NMGT, "NMGT"},   {Comparator::NMLT, "NMLT"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

enum class Tok { Ident, Number, Dollar, LParen, RParen, Comma, Star, Semicolon, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && ident_char(src_[pos_])) t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        t.kind = Tok::Number;
        while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
          t.text += advance();
        }
        if (pos_ < src_.size() && ident_char(src_[pos_])) {
          throw ParseError("malformed number", t.line, t.column);
        }
      } else {
        switch (ch) {
          case '$': t.kind = Tok::Dollar; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '*': t.kind = Tok::Star; break;
          case ';': t.kind = Tok::Semicolon; break;
          default: throw ParseError(std::string("unexpected character '") + ch + "'", t.line, t.column);
        }
        t.text = std::string(1, advance());
      }
      out.push_back(std::move(t));
    }
  }

private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const Schema& schema) : toks_(std::move(tokens)), schema_(schema) {}

  Query run() {
    Query q;
    expect_keyword("SELECT");
    if (peek().kind == Tok::Number) {
      const Token& t = next();
      q.k = parse_k(t);
      if (peek().kind == Tok::Number) q.alpha_override = parse_degree(next());
    }
    if (peek().kind == Tok::Star) {
      next();
      q.select_all = true;
    } else {
      do {
        if (peek_keyword("FROM")) fail(peek(), "expected attribute name, got FROM");
        const Token& t = expect(Tok::Ident, "attribute name");
        std::string name = resolve_attribute(t).name;
        if (std::find(q.projection.begin(), q.projection.end(), name) != q.projection.end()) {
          semantic(t, "attribute '" + name + "' projected twice");
        }
        q.projection.push_back(std::move(name));
      } while (accept(Tok::Comma));
    }
    expect_keyword("FROM");
    const Token& rel = expect(Tok::Ident, "relation name");
    if (!iequals(rel.text, schema_.relation)) {
      semantic(rel, "unknown relation '" + rel.text + "', expected '" + schema_.relation + "'");
    }
    q.relation = schema_.relation;
    if (peek_keyword("WHERE")) {
      next();
      do {
        Condition c = condition();
        if (q.condition_for(c.attribute)) semantic(last_attr_, "attribute '" + c.attribute + "' constrained twice");
        q.conditions.push_back(std::move(c));
      } while (accept_keyword("AND"));
    }
    accept(Tok::Semicolon);
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after end of query");
    return q;
  }

private:
  Condition condition() {
    Condition c;
    last_attr_ = expect(Tok::Ident, "attribute name");
    const AttributeSpec& attr = resolve_attribute(last_attr_);
    c.attribute = attr.name;
    const Token& cmp = expect(Tok::Ident, "comparator");
    auto parsed = parse_comparator(cmp.text);
    if (!parsed) fail(cmp, "unknown comparator '" + cmp.text + "'");
    c.comparator = *parsed;
    if (accept(Tok::LParen)) {
      do {
        c.labels.push_back(label(attr));
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    } else {
      c.labels.push_back(label(attr));
    }
    if (accept_keyword("THOLD")) c.thold = parse_degree(expect(Tok::Number, "threshold"));
    return c;
  }

  std::string label(const AttributeSpec& attr) {
    expect(Tok::Dollar, "'$'");
    const Token& t = expect(Tok::Ident, "label name");
    for (const auto& l : attr.labels) {
      if (iequals(l.name, t.text)) return l.name;
    }
    semantic(t, "unknown label '" + t.text + "' for attribute '" + attr.name + "'");
  }

  const AttributeSpec& resolve_attribute(const Token& t) {
    const AttributeSpec* a = schema_.find_ci(t.text);
    if (!a) semantic(t, "unknown attribute '" + t.text + "'");
    return *a;
  }

  int parse_k(const Token& t) {
    int v = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || end != t.text.data() + t.text.size() || v < 1) {
      fail(t, "top-k count must be a positive integer, got " + describe(t));
    }
    return v;
  }

  double parse_degree(const Token& t) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || end != t.text.data() + t.text.size()) fail(t, "malformed number " + describe(t));
    if (v < 0.0 || v > 1.0) fail(t, "degree must lie in [0, 1], got " + t.text);
    return v;
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, std::string_view what) {
    if (peek().kind != k) fail(peek(), "expected " + std::string(what) + ", got " + describe(peek()));
    return next();
  }
  bool peek_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && iequals(peek().text, kw); }
  bool accept_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) return false;
    next();
    return true;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(peek(), "expected " + std::string(kw) + ", got " + describe(peek()));
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }
  [[noreturn]] static void semantic(const Token& t, const std::string& msg) {
    throw SemanticError("line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + msg);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Schema& schema_;
  Token last_attr_;
};

}  // namespace

std::string_view to_string(Comparator c) {
  for (const auto& [k, name] : kComparators) {
    if (k == c) return name;
  }
  return "?";
}

std::optional<Comparator> parse_comparator(std::string_view text) {
  for (const auto& [k, name] : kComparators) {
    if (iequals(name, text)) return k;
  }
  return std::nullopt;
}

bool is_necessity(Comparator c) { return to_string(c).front() == 'N'; }

bool is_order_based(Comparator c) { return c != Comparator::FEQ && c != Comparator::NFEQ; }

const Condition* Query::condition_for(std::string_view attribute) const {
  for (const auto& c : conditions) {
    if (c.attribute == attribute) return &c;
  }
  return nullptr;
}

Query parse_query(std::string_view text, const Schema& schema) {
  return Parser(Lexer(text).run(), schema).run();
}

std::string to_text(const Query& q) {
  std::string out = "SELECT ";
  if (q.k) {
    out += std::to_string(*q.k) + " ";
    if (q.alpha_override) out += format_number(*q.alpha_override) + " ";
  }
  if (q.select_all) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < q.projection.size(); ++i) out += (i ? ", " : "") + q.projection[i];
  }
  out += " FROM " + q.relation;
  for (std::size_t i = 0; i < q.conditions.size(); ++i) {
    const auto& c = q.conditions[i];
    out += i ? " AND " : " WHERE ";
    out += c.attribute + " " + std::string(to_string(c.comparator)) + " (";
    for (std::size_t j = 0; j < c.labels.size(); ++j) out += (j ? ", $" : "$") + c.labels[j];
    out += ")";
    if (c.thold) out += " THOLD " + format_number(*c.thold);
  }
  return out + ";";
}

std::vector<std::string> resolve_comparator(const Condition& c, const AttributeSpec& attr) {
  if (is_necessity(c.comparator)) {
    throw UnsupportedComparator("unsupported comparator " + std::string(to_string(c.comparator)) + " on '" +
                                attr.name + "'");
  }
  std::vector<const LinguisticLabel*> vocab;
  for (const auto& l : attr.labels) vocab.push_back(&l);
  std::stable_sort(vocab.begin(), vocab.end(),
                   [](const auto* a, const auto* b) { return a->order_index < b->order_index; });

  std::vector<int> listed;
  for (const auto& name : c.labels) {
    const auto* l = attr.find_label(name);
    if (!l) throw SemanticError("unknown label '" + name + "' for attribute '" + attr.name + "'");
    listed.push_back(l->order_index);
  }
  if (listed.empty()) throw SemanticError("condition on '" + attr.name + "' lists no labels");

  std::vector<std::string> out;
  if (c.comparator == Comparator::FEQ) {
    for (const auto* l : vocab) {
      if (std::find(c.labels.begin(), c.labels.end(), l->name) != c.labels.end()) out.push_back(l->name);
    }
    return out;
  }
  if (!attr.ordered()) {
    throw SemanticError("order comparator " + std::string(to_string(c.comparator)) + " on unordered attribute '" +
                        attr.name + "'");
  }
  const int hi = *std::max_element(listed.begin(), listed.end());
  const int lo = *std::min_element(listed.begin(), listed.end());
  for (const auto* l : vocab) {
    const int i = l->order_index;
    bool keep = false;
    switch (c.comparator) {
      case Comparator::FGEQ: keep = i >= hi; break;
      case Comparator::FGT: keep = i > hi; break;
      case Comparator::FLEQ: keep = i <= lo; break;
      case Comparator::FLT: keep = i < lo; break;
      case Comparator::MGT: keep = i >= hi + 2; break;
      case Comparator::MLT: keep = i <= lo - 2; break;
      default: break;
    }
    if (keep) out.push_back(l->name);
  }
  if (out.empty()) {
    throw EmptySelection(std::string(to_string(c.comparator)) + " selects no label of '" + attr.name + "'");
  }
  return out;
}

AttributePartition partition_attributes(const Query& q, const Schema& schema) {
  AttributePartition p;
  for (const auto& c : q.conditions) p.inputs.push_back(c.attribute);
  auto is_input = [&](const std::string& a) { return std::find(p.inputs.begin(), p.inputs.end(), a) != p.inputs.end(); };
  if (q.select_all) {
    for (const auto& a : schema.attributes) {
      if (!is_input(a.name)) p.outputs.push_back(a.name);
    }
  } else {
    for (const auto& a : q.projection) {
      if (!is_input(a)) p.outputs.push_back(a);
    }
  }
  return p;
}

double default_alpha(const Query& q, const Schema& schema) {
  if (q.alpha_override) return *q.alpha_override;
  int clusters = 0;
  for (const auto& c : q.conditions) clusters = std::max(clusters, schema.at(c.attribute).cluster_count);
  return clusters > 0 ? 1.0 / static_cast<double>(clusters) : 0.0;
}

const Clause* ConjunctiveProposition::find(std::string_view attribute) const {
  for (const auto& c : clauses) {
    if (c.attribute == attribute) return &c;
  }
  return nullptr;
}

double ConjunctiveProposition::max_alpha() const {
  double a = 0.0;
  for (const auto& c : clauses) a = std::max(a, c.alpha);
  return a;
}

ConjunctiveProposition rewrite(const Query& q, const Schema& schema) {
  ConjunctiveProposition p;
  const double fallback = default_alpha(q, schema);
  for (const auto& c : q.conditions) {
    const AttributeSpec& attr = schema.at(c.attribute);
    Clause clause;
    clause.attribute = attr.name;
    clause.labels = resolve_comparator(c, attr);
    if (clause.labels.empty()) {
      throw SemanticError(std::string(to_string(c.comparator)) + " selects no label of '" + attr.name + "'");
    }
    clause.alpha = q.alpha_override ? *q.alpha_override : c.thold.value_or(fallback);
    p.clauses.push_back(std::move(clause));
  }
  return p;
}

}  // namespace fuzzsum
