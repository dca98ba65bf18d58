#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "fuzzsum/domain_io.hpp"
#include "fuzzsum/error.hpp"
#include "fuzzsum/query.hpp"
#include "fuzzsum/repair.hpp"
#include "fuzzsum/search.hpp"
#include "fuzzsum/state.hpp"

namespace fuzzsum::cli {

namespace {

struct Sources {
  std::string state;
  std::string schema;
  std::string data;
  std::string context;
  std::string hierarchy;
  std::string relation = "R";
  double threshold = 0.5;
  std::uint64_t seed = 0;
};

struct QueryOptions {
  std::string mode = "strict";
  std::optional<int> k;
  std::optional<double> alpha;
  std::string format = "table";
};

void add_sources(CLI::App* cmd, Sources& s) {
  cmd->add_option("--state", s.state, "State directory written by build or export");
  cmd->add_option("--schema", s.schema, "Schema JSON");
  cmd->add_option("--data", s.data, "Dataset CSV (needs --schema)");
  cmd->add_option("--context", s.context, "Fuzzy context JSON");
  cmd->add_option("--hierarchy", s.hierarchy, "Summary hierarchy JSON (needs --schema)");
  cmd->add_option("--relation", s.relation, "Relation name when the schema comes from a context");
  cmd->add_option("--threshold", s.threshold, "Confidence threshold T")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", s.seed, "FCM seed");
}

void add_query_options(CLI::App* cmd, QueryOptions& q) {
  cmd->add_option("--mode", q.mode, "strict, tolerant or exhaustive")
      ->check(CLI::IsMember({"strict", "tolerant", "exhaustive"}));
  cmd->add_option("--k", q.k, "Number of summaries to return")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", q.alpha, "Alpha overriding every clause")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--format", q.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

ProjectState load_sources(const Sources& s) {
  if (!s.state.empty()) return load_state(s.state);
  if (!s.hierarchy.empty()) {
    if (s.schema.empty()) throw UsageError("--hierarchy needs --schema");
    ProjectState st;
    st.schema = load_schema(s.schema);
    st.hierarchy = hierarchy_from_json(load_json_file(s.hierarchy));
    return st;
  }
  if (!s.context.empty()) {
    FuzzyContext ctx = context_from_json(load_json_file(s.context));
    Schema schema = s.schema.empty() ? schema_from_context(ctx, s.relation) : load_schema(s.schema);
    return build_state(std::move(schema), std::move(ctx), s.threshold);
  }
  if (!s.data.empty()) {
    if (s.schema.empty()) throw UsageError("--data needs --schema");
    return build_state(load_dataset_csv(s.data, load_schema(s.schema)), s.threshold, s.seed);
  }
  throw UsageError("give --state, --hierarchy, --context or --data");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string extent_text(const FuzzyExtent& e) {
  std::string out;
  for (const auto& x : e) out += (out.empty() ? "" : " ") + x.object + ":" + fmt(x.degree);
  return out.empty() ? "-" : out;
}

std::string intent_text(const std::vector<std::string>& intent) {
  std::string out;
  for (const auto& i : intent) out += (out.empty() ? "" : ", ") + i;
  return "{" + out + "}";
}

void print_ranked(std::ostream& out, const std::vector<RankedResult>& ranked) {
  out << std::left << std::setw(5) << "rank" << std::setw(8) << "summary" << std::setw(10) << "sd"
      << std::setw(10) << "alpha" << "intent / extent\n";
  int rank = 1;
  for (const auto& r : ranked) {
    out << std::left << std::setw(5) << rank++ << std::setw(8) << r.name << std::setw(10) << fmt(r.sd)
        << std::setw(10) << fmt(r.alpha) << intent_text(r.intent) << "\n"
        << std::string(33, ' ') << extent_text(r.extent) << "\n";
  }
}

void print_repair(std::ostream& out, const SummaryHierarchy& h, const RepairReport& r) {
  out << "no results\n";
  for (const auto& f : r.failures) {
    out << "failure node " << h.at(f.summary_id).name << " " << intent_text(h.at(f.summary_id).intent)
        << " failed on";
    for (const auto& a : f.failed_attributes) out << " " << a;
    out << "\n";
  }
  for (std::size_t i = 0; i < r.substitutions.size(); ++i) {
    const auto& s = r.substitutions[i];
    out << "[" << i + 1 << "] distance " << s.distance << ": " << to_text(s.query) << "\n";
    print_ranked(out, s.evaluation.ranked);
  }
  for (const auto& d : r.diagnostics) out << "note: " << d << "\n";
}

struct Outcome {
  int code = kOk;
  RepairReport repair;
};

Outcome run_query(const ProjectState& st, const std::string& text, const QueryOptions& opt, std::ostream& out) {
  Query q = parse_query(text, st.schema);
  if (opt.alpha) q.alpha_override = opt.alpha;
  const MatchMode mode = *parse_match_mode(opt.mode);
  Evaluation e = evaluate(st.hierarchy, st.schema, q, mode, opt.k);
  Outcome o;
  Json j = evaluation_to_json(e);
  if (e.ranked.empty()) {
    o.repair = repair(st.hierarchy, st.schema, q, mode);
    o.code = o.repair.substitutions.empty() ? kEmpty : kRepaired;
    j["repair"] = repair_to_json(st.hierarchy, o.repair);
  }
  if (opt.format == "json") {
    out << j.dump(2) << "\n";
  } else if (e.ranked.empty()) {
    print_repair(out, st.hierarchy, o.repair);
  } else {
    print_ranked(out, e.ranked);
  }
  return o;
}

void inspect(const ProjectState& st, const std::optional<std::string>& id, const std::optional<int>& level,
             const std::string& format, std::ostream& out) {
  const auto& h = st.hierarchy;
  const auto sd = satisfaction_degrees(h);
  std::vector<const ConceptSummary*> chosen;
  for (const auto& s : h.summaries()) {
    if (id && s.name != *id && std::to_string(s.id) != *id) continue;
    if (level && s.level != *level) continue;
    chosen.push_back(&s);
  }
  if (id && chosen.empty()) throw UsageError("no summary '" + *id + "'");
  if (format == "json") {
    Json arr = Json::array();
    for (const auto* s : chosen) {
      Json kids = Json::array();
      for (int k : h.children(s->id)) kids.push_back(h.at(k).name);
      arr.push_back({{"id", s->id},
                     {"name", s->name},
                     {"level", s->level},
                     {"intent", s->intent},
                     {"extent", extent_to_json(s->extent)},
                     {"sd", sd.at(s->id)},
                     {"children", std::move(kids)}});
    }
    out << arr.dump(2) << "\n";
    return;
  }
  for (const auto* s : chosen) {
    out << s->name << " level " << s->level << " sd " << fmt(sd.at(s->id)) << " " << intent_text(s->intent) << "\n"
        << "  extent: " << extent_text(s->extent) << "\n  children:";
    for (int k : h.children(s->id)) out << " " << h.at(k).name;
    out << "\n";
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

int repl(const ProjectState& st, QueryOptions opt, std::istream& in, std::ostream& out, std::ostream& err) {
  RepairReport last;
  std::string line;
  out << "> " << std::flush;
  while (std::getline(in, line)) {
    line = trim(line);
    std::string accept;
    if (line == "\\quit" || line == "\\q") break;
    if (line.rfind("\\mode", 0) == 0) {
      std::string m = trim(line.substr(5));
      if (parse_match_mode(m)) {
        opt.mode = m;
        out << "mode " << m << "\n";
      } else {
        err << "unknown mode '" << m << "'\n";
      }
    } else if (line.rfind("\\k", 0) == 0) {
      try {
        int k = std::stoi(line.substr(2));
        if (k < 1) throw std::invalid_argument("k");
        opt.k = k;
        out << "k " << k << "\n";
      } catch (const std::exception&) {
        err << "\\k needs a positive integer\n";
      }
    } else if (line.rfind("\\accept", 0) == 0) {
      accept = trim(line.substr(7));
    } else if (!line.empty() && std::all_of(line.begin(), line.end(), ::isdigit)) {
      accept = line;
    } else if (!line.empty() && line[0] == '\\') {
      err << "unknown command '" << line << "'\n";
    } else if (!line.empty()) {
      try {
        last = run_query(st, line, opt, out).repair;
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
      }
    }
    if (!accept.empty()) {
      std::size_t n = 0;
      try {
        n = std::stoul(accept);
      } catch (const std::exception&) {
      }
      if (n < 1 || n > last.substitutions.size()) {
        err << "no substitution " << accept << "\n";
      } else {
        auto chosen = last.substitutions[n - 1].query;
        out << "running " << to_text(chosen) << "\n";
        last = run_query(st, to_text(chosen), opt, out).repair;
      }
    }
    out << "> " << std::flush;
  }
  out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy summaries: build concept hierarchies and run flexible queries over them"};
  app.require_subcommand(1);
  Sources src;
  QueryOptions qopt;

  auto* build = app.add_subcommand("build", "Build a state directory from data, a context or a hierarchy");
  add_sources(build, src);
  std::string out_dir;
  build->add_option("--out", out_dir, "State directory to write")->required();

  auto* query = app.add_subcommand("query", "Evaluate one query");
  add_sources(query, src);
  add_query_options(query, qopt);
  std::string query_text;
  query->add_option("query", query_text, "Query text")->required();

  auto* rp = app.add_subcommand("repl", "Read queries from standard input");
  add_sources(rp, src);
  add_query_options(rp, qopt);

  auto* ins = app.add_subcommand("inspect", "Print summaries with extents, SD and children");
  add_sources(ins, src);
  std::optional<std::string> ins_id;
  std::optional<int> ins_level;
  std::string ins_format = "table";
  ins->add_option("--id", ins_id, "Summary name or id");
  ins->add_option("--level", ins_level, "Only summaries of this level");
  ins->add_option("--format", ins_format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* exp = app.add_subcommand("export", "Write the state, or one part of it, to --out");
  add_sources(exp, src);
  std::string exp_out;
  std::string exp_what = "state";
  exp->add_option("--out", exp_out, "Output directory (state) or file")->required();
  exp->add_option("--what", exp_what, "state, schema, context, lattice or hierarchy")
      ->check(CLI::IsMember({"state", "schema", "context", "lattice", "hierarchy"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }
  try {
    ProjectState st = load_sources(src);
    if (*build) {
      save_state(st, out_dir);
      out << "built " << st.hierarchy.summaries().size() << " summaries into " << out_dir << "\n";
      return kOk;
    }
    if (*query) {
      try {
        return run_query(st, query_text, qopt, out).code;
      } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kQueryError;
      } catch (const SemanticError& e) {
        err << "semantic error: " << e.what() << "\n";
        return kQueryError;
      }
    }
    if (*rp) return repl(st, qopt, in, out, err);
    if (*ins) {
      inspect(st, ins_id, ins_level, ins_format, out);
      return kOk;
    }
    if (*exp) {
      if (exp_what == "state") {
        save_state(st, exp_out);
      } else if (exp_what == "schema") {
        write_text_file(exp_out, schema_to_json(st.schema).dump(2) + "\n");
      } else if (exp_what == "hierarchy") {
        write_text_file(exp_out, hierarchy_to_json(st.hierarchy).dump(2) + "\n");
      } else if (exp_what == "context") {
        if (!st.context) throw UsageError("state has no context");
        write_text_file(exp_out, context_to_json(*st.context).dump(2) + "\n");
      } else {
        if (!st.lattice) throw UsageError("state has no lattice");
        write_text_file(exp_out, lattice_to_json(*st.lattice).dump(2) + "\n");
      }
      out << "wrote " << exp_what << " to " << exp_out << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fuzzsum::cli
