#include "fuzzsum/state.hpp"

#include <filesystem>

#include "fuzzsum/domain_io.hpp"
#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace fs = std::filesystem;

ProjectState build_state(const Dataset& ds, double threshold, std::uint64_t seed) {
  FcmOptions options;
  options.seed = seed;
  std::vector<ClusterModel> models;
  std::vector<MembershipMatrix> matrices;
  for (auto& c : cluster_dataset(ds, options)) {
    models.push_back(std::move(c.model));
    matrices.push_back(std::move(c.matrix));
  }
  ProjectState state = build_state(ds.schema, build_context(ds, models, matrices), threshold);
  state.seed = seed;
  return state;
}

ProjectState build_state(Schema schema, FuzzyContext ctx, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) throw ConfigError("threshold must lie in [0, 1]");
  ctx.validate();
  ProjectState state;
  state.schema = std::move(schema);
  state.threshold = threshold;
  state.lattice = build_lattice(enumerate_concepts(ctx, threshold), threshold);
  state.hierarchy = build_hierarchy(*state.lattice);
  state.context = std::move(ctx);
  return state;
}

Schema schema_from_context(const FuzzyContext& ctx, const std::string& relation) {
  Schema schema;
  schema.relation = relation;
  for (const auto& key : ctx.attributes) {
    auto [attr, label] = split_key(key);
    AttributeSpec* spec = nullptr;
    for (auto& a : schema.attributes) {
      if (a.name == attr) spec = &a;
    }
    if (!spec) {
      schema.attributes.push_back({std::string(attr), FType::Ftype3, {}, 0, std::nullopt});
      spec = &schema.attributes.back();
    }
    spec->labels.push_back({std::string(label), static_cast<int>(spec->labels.size()), std::nullopt});
    spec->cluster_count = static_cast<int>(spec->labels.size());
  }
  return schema;
}

void save_state(const ProjectState& state, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "': " + ec.message());
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  write_text_file(path("schema.json"), schema_to_json(state.schema).dump(2) + "\n");
  write_text_file(path("hierarchy.json"), hierarchy_to_json(state.hierarchy).dump(2) + "\n");
  if (state.context) write_text_file(path("context.json"), context_to_json(*state.context).dump(2) + "\n");
  if (state.lattice) write_text_file(path("lattice.json"), lattice_to_json(*state.lattice).dump(2) + "\n");
  Json meta = {{"threshold", state.threshold}, {"seed", state.seed}};
  write_text_file(path("meta.json"), meta.dump(2) + "\n");
}

ProjectState load_state(const std::string& dir) {
  auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a state directory");
  ProjectState state;
  state.schema = schema_from_json(load_json_file(path("schema.json")));
  state.hierarchy = hierarchy_from_json(load_json_file(path("hierarchy.json")));
  if (fs::exists(path("context.json"))) state.context = context_from_json(load_json_file(path("context.json")));
  if (fs::exists(path("lattice.json"))) state.lattice = lattice_from_json(load_json_file(path("lattice.json")));
  if (fs::exists(path("meta.json"))) {
    Json meta = load_json_file(path("meta.json"));
    state.threshold = meta.value("threshold", state.threshold);
    state.seed = meta.value("seed", state.seed);
  }
  return state;
}

}  // namespace fuzzsum
