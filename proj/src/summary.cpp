#include "fuzzsum/summary.hpp"

#include <algorithm>
#include <deque>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

bool proper_subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<std::string> ConceptSummary::labels_of(std::string_view attribute) const {
  std::vector<std::string> out;
  for (const auto& key : intent) {
    auto [attr, label] = split_key(key);
    if (attr == attribute) out.push_back(label);
  }
  return out;
}

SummaryHierarchy::SummaryHierarchy(std::vector<ConceptSummary> summaries, std::map<int, std::vector<int>> children,
                                   int root)
    : summaries_(std::move(summaries)), root_(root) {
  std::sort(summaries_.begin(), summaries_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < summaries_.size(); ++i) {
    auto& s = summaries_[i];
    if (!index_.emplace(s.id, i).second) throw DataError("duplicate summary id " + std::to_string(s.id));
    s.level = static_cast<int>(s.intent.size());
    if (s.name.empty()) s.name = "z" + std::to_string(s.id);
  }
  if (!index_.count(root_)) throw DataError("root id " + std::to_string(root_) + " is not a summary");

  const std::size_t n = summaries_.size();
  children_.assign(n, {});
  parents_.assign(n, {});
  std::vector<std::set<std::string>> intents;
  intents.reserve(n);
  for (const auto& s : summaries_) intents.push_back(as_set(s.intent));

  auto edge_end = [&](int id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw DataError("edge refers to unknown summary id " + std::to_string(id));
    return it->second;
  };
  for (auto& [parent, kids] : children) {
    std::size_t p = edge_end(parent);
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    for (int kid : kids) {
      std::size_t c = edge_end(kid);
      if (!proper_subset(intents[p], intents[c])) {
        throw DataError("edge " + summaries_[p].name + " -> " + summaries_[c].name +
                        ": child intent must strictly contain the parent intent");
      }
      children_[p].push_back(kid);
      parents_[c].push_back(parent);
    }
  }
  for (auto& ps : parents_) std::sort(ps.begin(), ps.end());

  // Kahn's algorithm from the root.
  std::vector<int> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = static_cast<int>(parents_[i].size());
  if (indegree[index_of(root_)] != 0) throw DataError("root summary has parents");
  std::deque<int> ready{root_};
  while (!ready.empty()) {
    int id = ready.front();
    ready.pop_front();
    topo_.push_back(id);
    for (int kid : children_[index_of(id)]) {
      if (--indegree[index_of(kid)] == 0) ready.push_back(kid);
    }
  }
  if (topo_.size() != n) {
    for (const auto& s : summaries_) {
      if (std::find(topo_.begin(), topo_.end(), s.id) == topo_.end()) {
        throw DataError("summary " + s.name + " is unreachable from the root");
      }
    }
  }

  descendants_.assign(n, {});
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    std::size_t i = index_of(*it);
    for (int kid : children_[i]) {
      descendants_[i].insert(kid);
      const auto& sub = descendants_[index_of(kid)];
      descendants_[i].insert(sub.begin(), sub.end());
    }
  }
}

std::size_t SummaryHierarchy::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UsageError("no summary with id " + std::to_string(id));
  return it->second;
}

const ConceptSummary& SummaryHierarchy::at(int id) const { return summaries_[index_of(id)]; }

const ConceptSummary* SummaryHierarchy::find(int id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &summaries_[it->second];
}

const ConceptSummary* SummaryHierarchy::find_by_name(std::string_view name) const {
  for (const auto& s : summaries_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const std::vector<int>& SummaryHierarchy::children(int id) const { return children_[index_of(id)]; }
const std::vector<int>& SummaryHierarchy::parents(int id) const { return parents_[index_of(id)]; }
const std::set<int>& SummaryHierarchy::descendants(int id) const { return descendants_[index_of(id)]; }

std::vector<int> SummaryHierarchy::level(int n) const {
  std::vector<int> out;
  for (const auto& s : summaries_) {
    if (s.level == n) out.push_back(s.id);
  }
  return out;
}

SummaryHierarchy build_hierarchy(const ConceptLattice& lattice) {
  std::vector<ConceptSummary> summaries;
  summaries.reserve(lattice.concepts.size());
  for (const auto& c : lattice.concepts) {
    ConceptSummary s;
    s.id = c.id;
    s.intent = c.intent;
    s.extent = c.extent;
    summaries.push_back(std::move(s));
  }
  std::map<int, std::vector<int>> children;
  for (const auto& [child, parent] : lattice.covers) children[parent].push_back(child);
  return SummaryHierarchy(std::move(summaries), std::move(children), lattice.top);
}

std::map<int, std::vector<int>> derive_children_by_intent(const std::vector<ConceptSummary>& summaries) {
  const std::size_t n = summaries.size();
  std::vector<std::set<std::string>> intents;
  for (const auto& s : summaries) intents.push_back(as_set(s.intent));
  std::map<int, std::vector<int>> out;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!proper_subset(intents[p], intents[c])) continue;
      bool covered = true;
      for (std::size_t q = 0; q < n && covered; ++q) {
        if (proper_subset(intents[p], intents[q]) && proper_subset(intents[q], intents[c])) covered = false;
      }
      if (covered) out[summaries[p].id].push_back(summaries[c].id);
    }
  }
  return out;
}

AlphaSummary alpha_cut(const ConceptSummary& s, double alpha) {
  AlphaSummary out;
  out.summary_id = s.id;
  out.alpha = alpha;
  for (const auto& e : s.extent) {
    if (e.degree >= alpha) out.extent.push_back(e);
  }
  return out;
}

Json hierarchy_to_json(const SummaryHierarchy& h) {
  Json summaries = Json::array();
  for (const auto& s : h.summaries()) {
    summaries.push_back({{"id", s.id},
                         {"name", s.name},
                         {"level", s.level},
                         {"intent", s.intent},
                         {"extent", extent_to_json(s.extent)},
                         {"children", h.children(s.id)}});
  }
  return {{"root", h.root()}, {"summaries", std::move(summaries)}};
}

SummaryHierarchy hierarchy_from_json(const Json& j) {
  std::vector<ConceptSummary> summaries;
  std::map<int, std::vector<int>> children;
  bool any_children = false;
  try {
    for (const auto& js : j.at("summaries")) {
      ConceptSummary s;
      s.id = js.at("id").get<int>();
      s.name = js.value("name", std::string{});
      s.intent = js.at("intent").get<std::vector<std::string>>();
      s.extent = extent_from_json(js.at("extent"));
      if (js.contains("children")) {
        any_children = true;
        children[s.id] = js["children"].get<std::vector<int>>();
      }
      summaries.push_back(std::move(s));
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed hierarchy: ") + e.what());
  }
  if (summaries.empty()) throw DataError("hierarchy has no summaries");

  std::set<std::set<std::string>> seen;
  for (const auto& s : summaries) {
    if (!seen.insert(as_set(s.intent)).second) throw DataError("summary " + s.name + " repeats another intent");
  }
  if (!any_children) children = derive_children_by_intent(summaries);

  int root = 0;
  if (j.contains("root")) {
    root = j["root"].get<int>();
  } else {
    std::vector<int> candidates;
    for (const auto& s : summaries) {
      auto mine = as_set(s.intent);
      bool below_all = std::all_of(summaries.begin(), summaries.end(), [&](const ConceptSummary& o) {
        auto theirs = as_set(o.intent);
        return std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end());
      });
      if (below_all) candidates.push_back(s.id);
    }
    if (candidates.size() != 1) throw DataError("hierarchy has no unique most general summary; give \"root\"");
    root = candidates.front();
  }
  return SummaryHierarchy(std::move(summaries), std::move(children), root);
}

}  // namespace fuzzsum
