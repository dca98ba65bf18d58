#include "fuzzsum/repair.hpp"

#include <algorithm>
#include <set>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

std::set<std::string> met_clauses(const ConceptSummary& s, const ConjunctiveProposition& p) {
  std::set<std::string> out;
  for (const auto& c : p.clauses) {
    for (const auto& l : s.labels_of(c.attribute)) {
      if (std::find(c.labels.begin(), c.labels.end(), l) != c.labels.end()) out.insert(c.attribute);
    }
  }
  return out;
}

// Failed attributes of s, empty when s is not failing.
std::vector<std::string> failing(const SummaryHierarchy& h, const ConceptSummary& s, const ConjunctiveProposition& p) {
  if (met_clauses(s, p).empty()) return {};
  const bool leaf = h.is_leaf(s.id);
  std::vector<std::string> out;
  for (const auto& [attr, g] : grade(s, p).per_attribute) {
    if (g == Grade::Violated || (leaf && g == Grade::Pending)) out.push_back(attr);
  }
  return out;
}

std::vector<std::string> in_vocabulary_order(const AttributeSpec& attr, const std::set<std::string>& labels) {
  std::vector<const LinguisticLabel*> vocab;
  for (const auto& l : attr.labels) {
    if (labels.count(l.name)) vocab.push_back(&l);
  }
  std::stable_sort(vocab.begin(), vocab.end(),
                   [](const auto* a, const auto* b) { return a->order_index < b->order_index; });
  std::vector<std::string> out;
  for (const auto* l : vocab) out.push_back(l->name);
  return out;
}

}  // namespace

std::vector<FailureNode> detect_failures(const SummaryHierarchy& h, const ConjunctiveProposition& p,
                                         const SearchResult& found) {
  if (!found.results.empty()) throw UsageError("detect_failures called on a query with results");
  std::vector<FailureNode> out;
  for (const auto& s : h.summaries()) {
    auto failed = failing(h, s, p);
    if (failed.empty()) continue;
    const auto met = met_clauses(s, p);
    bool inherited = std::any_of(h.parents(s.id).begin(), h.parents(s.id).end(), [&](int parent) {
      const auto& ps = h.at(parent);
      return !failing(h, ps, p).empty() && met_clauses(ps, p) == met;
    });
    if (!inherited) out.push_back({s.id, std::move(failed)});
  }
  if (out.empty() && !h.summaries().empty()) {
    const auto met = met_clauses(h.at(h.root()), p);
    FailureNode root{h.root(), {}};
    for (const auto& c : p.clauses) {
      if (!met.count(c.attribute)) root.failed_attributes.push_back(c.attribute);
    }
    out.push_back(std::move(root));
  }
  return out;
}

int distance(const ConjunctiveProposition& p, const ConceptSummary& s) {
  int d = 0;
  for (const auto& c : p.clauses) {
    for (const auto& l : s.labels_of(c.attribute)) {
      d += std::find(c.labels.begin(), c.labels.end(), l) != c.labels.end();
    }
  }
  return d;
}

RepairReport propose_substitutions(const SummaryHierarchy& h, const Schema& schema, const Query& q,
                                   const std::vector<FailureNode>& failures, MatchMode mode) {
  RepairReport report;
  report.query = to_text(q);
  report.failures = failures;
  const ConjunctiveProposition p = rewrite(q, schema);
  std::set<std::string> seen;

  for (const auto& f : failures) {
    const auto& node = h.at(f.summary_id);
    SubstitutionQuery sub;
    sub.query = q;
    sub.failure_node = f.summary_id;
    sub.distance = 0;
    for (const auto& attr_name : f.failed_attributes) {
      const AttributeSpec& attr = schema.at(attr_name);
      const Clause* clause = p.find(attr_name);
      auto outside_query = [&](const std::vector<std::string>& labels) {
        return std::any_of(labels.begin(), labels.end(), [&](const std::string& l) {
          return std::find(clause->labels.begin(), clause->labels.end(), l) == clause->labels.end();
        });
      };

      int best = -1;
      std::set<std::string> labels;
      for (int kid : h.children(f.summary_id)) {
        const auto& child = h.at(kid);
        auto child_labels = child.labels_of(attr_name);
        if (child_labels.empty() || !outside_query(child_labels)) continue;
        int d = distance(p, child);
        if (d > best) {
          best = d;
          labels.clear();
        }
        if (d == best) labels.insert(child_labels.begin(), child_labels.end());
      }
      if (best < 0) {
        auto own = node.labels_of(attr_name);
        if (own.empty()) {
          report.diagnostics.push_back(node.name + ": no alternative labels for " + attr_name);
          continue;
        }
        best = distance(p, node);
        labels.insert(own.begin(), own.end());
      }

      auto chosen = in_vocabulary_order(attr, labels);
      for (auto& c : sub.query.conditions) {
        if (c.attribute != attr_name) continue;
        c.comparator = Comparator::FEQ;
        c.labels = chosen;
      }
      sub.replaced[attr_name] = std::move(chosen);
      sub.distance = std::max(sub.distance, best);
    }
    if (sub.replaced.empty()) continue;

    std::string text = to_text(sub.query);
    if (text == report.query) {
      report.diagnostics.push_back(node.name + ": substitution leaves the query unchanged");
      continue;
    }
    if (!seen.insert(text).second) continue;
    sub.evaluation = evaluate(h, schema, sub.query, mode);
    if (sub.evaluation.ranked.empty()) {
      report.diagnostics.push_back(node.name + ": substitution " + text + " returns no results");
      continue;
    }
    report.substitutions.push_back(std::move(sub));
  }

  std::stable_sort(report.substitutions.begin(), report.substitutions.end(),
                   [](const SubstitutionQuery& a, const SubstitutionQuery& b) {
                     if (a.distance != b.distance) return a.distance > b.distance;
                     return a.failure_node < b.failure_node;
                   });
  if (report.substitutions.empty()) report.diagnostics.push_back("no viable substitution");
  return report;
}

RepairReport repair(const SummaryHierarchy& h, const Schema& schema, const Query& q, MatchMode mode) {
  Evaluation e = evaluate(h, schema, q, mode);
  if (!e.search.results.empty()) {
    RepairReport r;
    r.query = to_text(q);
    if (e.ranked.empty()) r.diagnostics.push_back("every matching summary has an empty alpha-cut");
    return r;
  }
  return propose_substitutions(h, schema, q, detect_failures(h, e.proposition, e.search), mode);
}

Json repair_to_json(const SummaryHierarchy& h, const RepairReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    const auto& s = h.at(f.summary_id);
    failures.push_back(
        {{"id", f.summary_id}, {"name", s.name}, {"intent", s.intent}, {"failed_attributes", f.failed_attributes}});
  }
  Json subs = Json::array();
  for (const auto& s : r.substitutions) {
    Json replaced = Json::object();
    for (const auto& [attr, labels] : s.replaced) replaced[attr] = labels;
    subs.push_back({{"query", to_text(s.query)},
                    {"failure_node", h.at(s.failure_node).name},
                    {"distance", s.distance},
                    {"replaced", std::move(replaced)},
                    {"results", ranked_to_json(s.evaluation.ranked)}});
  }
  return {{"query", r.query},
          {"failure_nodes", std::move(failures)},
          {"substitutions", std::move(subs)},
          {"diagnostics", r.diagnostics}};
}

}  // namespace fuzzsum
