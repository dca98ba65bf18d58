#include "fuzzsum/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool meets(const ConceptSummary& s, const Clause& c) {
  for (const auto& l : s.labels_of(c.attribute)) {
    if (contains(c.labels, l)) return true;
  }
  return false;
}

// keys[id] = every "Attr::Label" in the intent of id or any descendant.
std::map<int, std::set<std::string>> downset_keys(const SummaryHierarchy& h) {
  std::map<int, std::set<std::string>> out;
  const auto& topo = h.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto& keys = out[*it];
    const auto& s = h.at(*it);
    keys.insert(s.intent.begin(), s.intent.end());
    for (int kid : h.children(*it)) keys.insert(out[kid].begin(), out[kid].end());
  }
  return out;
}

bool downset_can_meet(const std::set<std::string>& keys, const ConjunctiveProposition& p) {
  for (const auto& c : p.clauses) {
    bool any = false;
    for (const auto& l : c.labels) any = any || keys.count(make_key(c.attribute, l));
    if (!any) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(MatchMode m) {
  switch (m) {
    case MatchMode::Strict: return "strict";
    case MatchMode::Tolerant: return "tolerant";
    case MatchMode::Exhaustive: return "exhaustive";
  }
  return "?";
}

std::optional<MatchMode> parse_match_mode(std::string_view text) {
  for (auto m : {MatchMode::Strict, MatchMode::Tolerant, MatchMode::Exhaustive}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::Satisfied: return "satisfied";
    case Grade::Partial: return "partial";
    case Grade::Pending: return "pending";
    case Grade::Violated: return "violated";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Exact: return "exact";
    case Verdict::Indecision: return "indecision";
    case Verdict::False: return "false";
  }
  return "?";
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::Insert: return "insert";
    case Action::Descend: return "descend";
    case Action::Prune: return "prune";
    case Action::Stop: return "stop";
  }
  return "?";
}

Correspondence grade(const ConceptSummary& s, const ConjunctiveProposition& p, bool tolerant) {
  Correspondence out;
  bool violated = false;
  bool all_satisfied = true;
  for (const auto& c : p.clauses) {
    const auto labels = s.labels_of(c.attribute);
    std::size_t inside = 0;
    for (const auto& l : labels) inside += contains(c.labels, l);
    Grade g;
    if (labels.empty()) {
      g = Grade::Pending;
    } else if (inside == labels.size()) {
      g = Grade::Satisfied;
    } else if (inside == 0) {
      g = Grade::Violated;
    } else {
      g = tolerant ? Grade::Satisfied : Grade::Partial;
    }
    violated = violated || g == Grade::Violated;
    all_satisfied = all_satisfied && g == Grade::Satisfied;
    out.per_attribute.emplace_back(c.attribute, g);
  }
  out.verdict = violated ? Verdict::False : all_satisfied ? Verdict::Exact : Verdict::Indecision;
  return out;
}

bool matches_every_clause(const ConceptSummary& s, const ConjunctiveProposition& p) {
  return std::all_of(p.clauses.begin(), p.clauses.end(), [&](const Clause& c) { return meets(s, c); });
}

SearchResult search(const SummaryHierarchy& h, const ConjunctiveProposition& p, MatchMode mode) {
  SearchResult out;
  out.mode = mode;
  if (h.summaries().empty()) return out;
  const bool tolerant = mode == MatchMode::Tolerant;

  std::map<int, std::set<std::string>> keys;
  if (mode == MatchMode::Exhaustive) keys = downset_keys(h);

  std::set<int> visited;
  std::set<int> found;
  std::vector<int> stack{h.root()};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!visited.insert(id).second) continue;
    const auto& s = h.at(id);
    TraceStep step{id, grade(s, p, tolerant).verdict, Action::Descend};

    if (mode == MatchMode::Exhaustive) {
      if (!downset_can_meet(keys.at(id), p)) {
        step.action = Action::Prune;
      } else if (matches_every_clause(s, p)) {
        step.action = Action::Insert;
        if (!s.crisp_empty()) found.insert(id);
      }
      if (step.action != Action::Prune) {
        const auto& kids = h.children(id);
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
      }
    } else if (step.verdict == Verdict::Exact) {
      step.action = Action::Insert;
      if (!s.crisp_empty()) found.insert(id);
    } else if (step.verdict == Verdict::False) {
      step.action = Action::Prune;
    } else {
      const auto& kids = h.children(id);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    out.trace.push_back(step);
  }

  if (mode != MatchMode::Exhaustive) {
    std::vector<int> exact;
    for (const auto& s : h.summaries()) {
      if (grade(s, p, tolerant).verdict == Verdict::Exact) exact.push_back(s.id);
    }
    for (auto it = found.begin(); it != found.end();) {
      bool covered = std::any_of(exact.begin(), exact.end(), [&](int e) { return h.descendants(e).count(*it); });
      it = covered ? found.erase(it) : std::next(it);
    }
  }
  out.results.assign(found.begin(), found.end());
  return out;
}

std::map<int, double> satisfaction_degrees(const SummaryHierarchy& h) {
  std::map<int, double> sd;
  for (const auto& s : h.summaries()) sd[s.id] = -std::numeric_limits<double>::infinity();
  if (h.summaries().empty()) return sd;
  sd[h.root()] = 0.0;
  for (int id : h.topological_order()) {
    const auto& parent = h.at(id);
    for (int kid : h.children(id)) {
      double via = sd[id] + sigma_jaccard(h.at(kid).extent, parent.extent);
      sd[kid] = std::max(sd[kid], via);
    }
  }
  return sd;
}

double satisfaction_degree(const SummaryHierarchy& h, int id) {
  if (!h.find(id)) throw UsageError("no summary with id " + std::to_string(id));
  return satisfaction_degrees(h).at(id);
}

std::vector<RankedResult> top_k(const SummaryHierarchy& h, const SearchResult& found, double alpha,
                                std::optional<int> k) {
  if (k && *k < 1) throw UsageError("k must be at least 1");
  const auto sd = satisfaction_degrees(h);
  std::vector<RankedResult> out;
  for (int id : found.results) {
    const auto& s = h.at(id);
    AlphaSummary cut = alpha_cut(s, alpha);
    if (cut.extent.empty()) continue;
    out.push_back({id, s.name, s.intent, sd.at(id), alpha, std::move(cut.extent), found.mode});
  }
  std::sort(out.begin(), out.end(), [&](const RankedResult& a, const RankedResult& b) {
    if (a.sd != b.sd) return a.sd > b.sd;
    auto na = h.at(a.summary_id).extent.size();
    auto nb = h.at(b.summary_id).extent.size();
    if (na != nb) return na > nb;
    if (a.intent != b.intent) return a.intent < b.intent;
    return a.summary_id < b.summary_id;
  });
  if (k && out.size() > static_cast<std::size_t>(*k)) out.resize(static_cast<std::size_t>(*k));
  return out;
}

Evaluation evaluate(const SummaryHierarchy& h, const Schema& schema, const Query& q, MatchMode mode,
                    std::optional<int> k) {
  Evaluation e;
  e.query = q;
  e.proposition = rewrite(q, schema);
  e.search = search(h, e.proposition, mode);
  e.ranked = top_k(h, e.search, e.proposition.max_alpha(), k ? k : q.k);
  return e;
}

Json ranked_to_json(const std::vector<RankedResult>& ranked) {
  Json out = Json::array();
  for (const auto& r : ranked) {
    out.push_back({{"summary_id", r.summary_id},
                   {"name", r.name},
                   {"intent", r.intent},
                   {"sd", r.sd},
                   {"alpha", r.alpha},
                   {"extent", extent_to_json(r.extent)},
                   {"match_mode", to_string(r.match_mode)}});
  }
  return out;
}

Json evaluation_to_json(const Evaluation& e) {
  Json clauses = Json::array();
  for (const auto& c : e.proposition.clauses) {
    clauses.push_back({{"attribute", c.attribute}, {"labels", c.labels}, {"alpha", c.alpha}});
  }
  return {{"query", to_text(e.query)},
          {"mode", to_string(e.search.mode)},
          {"proposition", std::move(clauses)},
          {"results", ranked_to_json(e.ranked)}};
}

}  // namespace fuzzsum
