#include "fuzzsum/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

constexpr std::string_view kKeySep = "::";

// Objects/attributes incident at threshold, precomputed per row and column.
struct Incidence {
  std::vector<AttributeSet> rows;  // per object
  std::vector<ObjectSet> cols;     // per attribute
};

Incidence binarize(const FuzzyContext& ctx, double threshold) {
  Incidence inc;
  inc.rows.assign(ctx.object_count(), AttributeSet(ctx.attribute_count()));
  inc.cols.assign(ctx.attribute_count(), ObjectSet(ctx.object_count()));
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
      if (ctx.at(g, m) >= threshold) {
        inc.rows[g].set(m);
        inc.cols[m].set(g);
      }
    }
  }
  return inc;
}

AttributeSet intent_of(const Incidence& inc, std::size_t attribute_count, const ObjectSet& objects) {
  AttributeSet out(attribute_count);
  out.set();
  for (auto g = objects.find_first(); g != ObjectSet::npos; g = objects.find_next(g)) out &= inc.rows[g];
  return out;
}

ObjectSet extent_of(const Incidence& inc, std::size_t object_count, const AttributeSet& attributes) {
  ObjectSet out(object_count);
  out.set();
  for (auto m = attributes.find_first(); m != AttributeSet::npos; m = attributes.find_next(m)) {
    out &= inc.cols[m];
  }
  return out;
}

std::vector<AttributeSet> intents_by_subsets(const FuzzyContext& ctx, const Incidence& inc) {
  const std::size_t n = ctx.object_count();
  if (n >= 63) throw ContextError("subset closure is limited to fewer than 63 objects");
  std::set<AttributeSet> found;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    ObjectSet a(n, mask);
    found.insert(intent_of(inc, ctx.attribute_count(), a));
  }
  return {found.begin(), found.end()};
}

std::vector<AttributeSet> intents_by_next_closure(const FuzzyContext& ctx, const Incidence& inc) {
  const std::size_t m = ctx.attribute_count();
  auto close = [&](const AttributeSet& b) {
    return intent_of(inc, m, extent_of(inc, ctx.object_count(), b));
  };
  std::vector<AttributeSet> out;
  AttributeSet current = close(AttributeSet(m));
  out.push_back(current);
  AttributeSet full(m);
  full.set();
  while (current != full) {
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      if (current.test(i)) continue;
      // prefix = elements of current strictly below i
      AttributeSet prefix = current;
      for (std::size_t k = i; k < m; ++k) prefix.reset(k);
      AttributeSet seed = prefix;
      seed.set(i);
      AttributeSet next = close(seed);
      AttributeSet next_prefix = next;
      for (std::size_t k = i; k < m; ++k) next_prefix.reset(k);
      if (next_prefix == prefix) {
        current = std::move(next);
        out.push_back(current);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

std::vector<std::size_t> positions(const boost::dynamic_bitset<>& s) {
  std::vector<std::size_t> out;
  for (auto i = s.find_first(); i != boost::dynamic_bitset<>::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

}  // namespace

std::string make_key(std::string_view attribute, std::string_view label) {
  std::string key(attribute);
  key += kKeySep;
  key += label;
  return key;
}

std::pair<std::string, std::string> split_key(std::string_view key) {
  auto pos = key.find(kKeySep);
  if (pos == std::string_view::npos) return {std::string(key), std::string(key)};
  return {std::string(key.substr(0, pos)), std::string(key.substr(pos + kKeySep.size()))};
}

std::size_t FuzzyContext::object_index(std::string_view name) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i] == name) return i;
  }
  throw ContextError("unknown object '" + std::string(name) + "'");
}

std::size_t FuzzyContext::attribute_index(std::string_view key) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i] == key) return i;
  }
  throw ContextError("unknown attribute '" + std::string(key) + "'");
}

void FuzzyContext::validate() const {
  if (degrees.size() != objects.size() * attributes.size()) {
    throw ContextError("degree matrix has " + std::to_string(degrees.size()) + " entries, expected " +
                       std::to_string(objects.size() * attributes.size()));
  }
  if (std::set<std::string>(objects.begin(), objects.end()).size() != objects.size()) {
    throw ContextError("duplicate object name");
  }
  if (std::set<std::string>(attributes.begin(), attributes.end()).size() != attributes.size()) {
    throw ContextError("duplicate attribute name");
  }
  for (std::size_t g = 0; g < objects.size(); ++g) {
    for (std::size_t m = 0; m < attributes.size(); ++m) {
      double d = at(g, m);
      if (!(d >= 0.0 && d <= 1.0)) {
        throw ContextError("degree of (" + objects[g] + ", " + attributes[m] + ") outside [0,1]");
      }
    }
  }
}

double sigma_count(const FuzzyExtent& e) {
  double s = 0.0;
  for (const auto& x : e) s += x.degree;
  return s;
}

double sigma_jaccard(const FuzzyExtent& a, const FuzzyExtent& b) {
  std::map<std::string_view, std::pair<double, double>> merged;
  for (const auto& x : a) merged[x.object].first = x.degree;
  for (const auto& x : b) merged[x.object].second = x.degree;
  double inter = 0.0;
  double uni = 0.0;
  for (const auto& [_, d] : merged) {
    inter += std::min(d.first, d.second);
    uni += std::max(d.first, d.second);
  }
  return uni > 0.0 ? inter / uni : 0.0;
}

std::vector<std::string> FuzzyConcept::crisp_extent() const {
  std::vector<std::string> out;
  out.reserve(extent.size());
  for (const auto& e : extent) out.push_back(e.object);
  return out;
}

AttributeSet derive_intent(const FuzzyContext& ctx, const ObjectSet& objects, double threshold) {
  AttributeSet out(ctx.attribute_count());
  out.set();
  for (auto g = objects.find_first(); g != ObjectSet::npos; g = objects.find_next(g)) {
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
      if (ctx.at(g, m) < threshold) out.reset(m);
    }
  }
  return out;
}

ObjectSet derive_extent(const FuzzyContext& ctx, const AttributeSet& attributes, double threshold) {
  ObjectSet out(ctx.object_count());
  out.set();
  for (auto m = attributes.find_first(); m != AttributeSet::npos; m = attributes.find_next(m)) {
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
      if (ctx.at(g, m) < threshold) out.reset(g);
    }
  }
  return out;
}

std::vector<std::string> derive_intent(const FuzzyContext& ctx, const std::vector<std::string>& objects,
                                       double threshold) {
  ObjectSet set(ctx.object_count());
  for (const auto& o : objects) set.set(ctx.object_index(o));
  std::vector<std::string> out;
  for (auto m : positions(derive_intent(ctx, set, threshold))) out.push_back(ctx.attributes[m]);
  return out;
}

std::vector<std::string> derive_extent(const FuzzyContext& ctx, const std::vector<std::string>& attributes,
                                       double threshold) {
  AttributeSet set(ctx.attribute_count());
  for (const auto& a : attributes) set.set(ctx.attribute_index(a));
  std::vector<std::string> out;
  for (auto g : positions(derive_extent(ctx, set, threshold))) out.push_back(ctx.objects[g]);
  return out;
}

std::vector<FuzzyConcept> enumerate_concepts(const FuzzyContext& ctx, double threshold, Enumeration strategy) {
  ctx.validate();
  if (strategy == Enumeration::Auto) {
    strategy = ctx.object_count() < 20 ? Enumeration::SubsetClosure : Enumeration::NextClosure;
  }
  Incidence inc = binarize(ctx, threshold);
  std::vector<AttributeSet> intents = strategy == Enumeration::SubsetClosure
                                          ? intents_by_subsets(ctx, inc)
                                          : intents_by_next_closure(ctx, inc);

  std::vector<std::vector<std::size_t>> keys;
  keys.reserve(intents.size());
  for (const auto& b : intents) keys.push_back(positions(b));
  std::vector<std::size_t> order(intents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (keys[x].size() != keys[y].size()) return keys[x].size() < keys[y].size();
    return keys[x] < keys[y];
  });

  std::vector<FuzzyConcept> out;
  out.reserve(order.size());
  for (std::size_t pos : order) {
    FuzzyConcept c;
    c.id = static_cast<int>(out.size());
    for (auto m : keys[pos]) c.intent.push_back(ctx.attributes[m]);
    ObjectSet ext = extent_of(inc, ctx.object_count(), intents[pos]);
    for (auto g = ext.find_first(); g != ObjectSet::npos; g = ext.find_next(g)) {
      double mu = 1.0;
      for (auto m : keys[pos]) mu = std::min(mu, ctx.at(g, m));
      c.extent.push_back({ctx.objects[g], mu});
    }
    out.push_back(std::move(c));
  }
  return out;
}

const FuzzyConcept& ConceptLattice::concept_by_id(int id) const {
  for (const auto& c : concepts) {
    if (c.id == id) return c;
  }
  throw UsageError("no concept with id " + std::to_string(id));
}

bool ConceptLattice::is_cover(int child, int parent) const {
  return std::find(covers.begin(), covers.end(), std::pair{child, parent}) != covers.end();
}

std::vector<int> ConceptLattice::parents(int id) const {
  std::vector<int> out;
  for (const auto& [c, p] : covers) {
    if (c == id) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ConceptLattice::children(int id) const {
  std::vector<int> out;
  for (const auto& [c, p] : covers) {
    if (p == id) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConceptLattice build_lattice(std::vector<FuzzyConcept> concepts, double threshold) {
  ConceptLattice lat;
  lat.threshold = threshold;
  if (concepts.empty()) throw ContextError("cannot build a lattice from zero concepts");

  std::unordered_map<std::string, std::size_t> object_pos;
  for (const auto& c : concepts) {
    for (const auto& e : c.extent) object_pos.emplace(e.object, object_pos.size());
  }
  const std::size_t n = concepts.size();
  std::vector<ObjectSet> ext(n, ObjectSet(object_pos.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : concepts[i].extent) ext[i].set(object_pos[e.object]);
  }
  std::set<int> ids;
  for (const auto& c : concepts) {
    if (!ids.insert(c.id).second) throw ContextError("duplicate concept id " + std::to_string(c.id));
  }

  // below[p] = { q : ext(q) strictly inside ext(p) }
  std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
  std::vector<boost::dynamic_bitset<>> above(n, boost::dynamic_bitset<>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (ext[i] == ext[j]) {
        throw ContextError("duplicate concept: ids " + std::to_string(concepts[i].id) + " and " +
                           std::to_string(concepts[j].id) + " share an extent");
      }
      if (ext[i].is_proper_subset_of(ext[j])) {
        below[j].set(i);
        above[i].set(j);
      }
    }
  }

  int top = -1;
  int bottom = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (above[i].none()) {
      if (top != -1) throw ContextError("concept set has more than one maximal concept");
      top = concepts[i].id;
    }
    if (below[i].none()) {
      if (bottom != -1) throw ContextError("concept set has more than one minimal concept");
      bottom = concepts[i].id;
    }
  }
  lat.top = top;
  lat.bottom = bottom;

  for (std::size_t c = 0; c < n; ++c) {
    for (auto p = above[c].find_first(); p != boost::dynamic_bitset<>::npos; p = above[c].find_next(p)) {
      if (!(above[c] & below[p]).any()) lat.covers.emplace_back(concepts[c].id, concepts[p].id);
    }
  }
  std::sort(lat.covers.begin(), lat.covers.end());
  lat.concepts = std::move(concepts);
  return lat;
}

double similarity(const FuzzyConcept& a, const FuzzyConcept& b) { return sigma_jaccard(a.extent, b.extent); }

double fuzzy_score(const ConceptLattice& lattice, int child, int parent) {
  if (!lattice.is_cover(child, parent)) {
    throw UsageError("(" + std::to_string(child) + ", " + std::to_string(parent) + ") is not a cover edge");
  }
  return similarity(lattice.concept_by_id(child), lattice.concept_by_id(parent));
}

Json context_to_json(const FuzzyContext& ctx) {
  Json rows = Json::array();
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    Json row = Json::array();
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) row.push_back(ctx.at(g, m));
    rows.push_back(std::move(row));
  }
  return {{"objects", ctx.objects}, {"attributes", ctx.attributes}, {"degrees", std::move(rows)}};
}

FuzzyContext context_from_json(const Json& j) {
  FuzzyContext ctx;
  try {
    ctx.objects = j.at("objects").get<std::vector<std::string>>();
    ctx.attributes = j.at("attributes").get<std::vector<std::string>>();
    const auto& rows = j.at("degrees");
    if (!rows.is_array() || rows.size() != ctx.objects.size()) {
      throw ContextError("'degrees' must have one row per object");
    }
    for (std::size_t g = 0; g < rows.size(); ++g) {
      if (!rows[g].is_array() || rows[g].size() != ctx.attributes.size()) {
        throw ContextError("row " + std::to_string(g) + " of 'degrees' must have one entry per attribute");
      }
      for (const auto& d : rows[g]) ctx.degrees.push_back(d.get<double>());
    }
  } catch (const Json::exception& e) {
    throw ContextError(std::string("malformed context: ") + e.what());
  }
  ctx.validate();
  return ctx;
}

Json extent_to_json(const FuzzyExtent& extent) {
  Json out = Json::object();
  for (const auto& e : extent) out[e.object] = e.degree;
  return out;
}

FuzzyExtent extent_from_json(const Json& j) {
  FuzzyExtent out;
  if (j.is_array()) {
    // bare list of objects: full membership
    for (const auto& o : j) out.push_back({o.get<std::string>(), 1.0});
    return out;
  }
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back({it.key(), it.value().get<double>()});
  return out;
}

Json lattice_to_json(const ConceptLattice& lattice) {
  Json concepts = Json::array();
  for (const auto& c : lattice.concepts) {
    concepts.push_back({{"id", c.id}, {"intent", c.intent}, {"extent", extent_to_json(c.extent)}});
  }
  Json covers = Json::array();
  for (const auto& [c, p] : lattice.covers) covers.push_back({c, p});
  return {{"threshold", lattice.threshold}, {"top", lattice.top},         {"bottom", lattice.bottom},
          {"concepts", std::move(concepts)}, {"covers", std::move(covers)}};
}

ConceptLattice lattice_from_json(const Json& j) {
  try {
    std::vector<FuzzyConcept> concepts;
    for (const auto& jc : j.at("concepts")) {
      FuzzyConcept c;
      c.id = jc.at("id").get<int>();
      c.intent = jc.at("intent").get<std::vector<std::string>>();
      c.extent = extent_from_json(jc.at("extent"));
      concepts.push_back(std::move(c));
    }
    ConceptLattice lat = build_lattice(std::move(concepts), j.at("threshold").get<double>());
    if (j.contains("covers")) {
      std::vector<std::pair<int, int>> stated;
      for (const auto& e : j["covers"]) stated.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      std::sort(stated.begin(), stated.end());
      if (stated != lat.covers) throw ContextError("stored cover edges disagree with concept extents");
    }
    return lat;
  } catch (const Json::exception& e) {
    throw ContextError(std::string("malformed lattice: ") + e.what());
  }
}

}  // namespace fuzzsum
