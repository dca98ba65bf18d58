#include "fuzzsum/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "fuzzsum/error.hpp"

namespace fuzzsum {

namespace {

std::vector<double> kmeanspp_init(const std::vector<double>& x, int clusters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> centers;
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  centers.push_back(x[pick(rng)]);
  std::vector<double> d2(x.size());
  while (static_cast<int>(centers.size()) < clusters) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double c : centers) best = std::min(best, (x[i] - c) * (x[i] - c));
      d2[i] = best;
      total += best;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng);
    std::size_t chosen = x.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (d2[i] == 0.0) continue;
      acc += d2[i];
      chosen = i;
      if (acc >= r) break;
    }
    centers.push_back(x[chosen]);
  }
  return centers;
}

std::vector<double> update_centers(const std::vector<double>& x, const std::vector<std::vector<double>>& u,
                                   const std::vector<double>& previous, double m) {
  std::vector<double> out(previous);
  for (std::size_t j = 0; j < previous.size(); ++j) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double w = std::pow(u[i][j], m);
      num += w * x[i];
      den += w;
    }
    if (den > 0.0) out[j] = num / den;
  }
  return out;
}

}  // namespace

IntermediateColumn encode_dataset(const Dataset& ds, const AttributeSpec& attr) {
  std::size_t col = ds.attribute_position(attr.name);
  IntermediateColumn out;
  out.attribute = attr.name;
  out.tuple_ids = ds.tuple_ids;
  out.codes.reserve(ds.rows.size());
  for (const auto& row : ds.rows) {
    const FuzzyValue& v = row.at(col);
    if (const auto* c = std::get_if<Crisp>(&v)) {
      out.codes.emplace_back(c->value);
    } else if (const auto* t = std::get_if<Trapezoid>(&v)) {
      out.codes.emplace_back(t->centroid());
    } else if (const auto* r = std::get_if<LabelRef>(&v)) {
      const auto* label = attr.find_label(r->label);
      if (!label) throw SchemaError("unknown label $" + r->label + " on attribute '" + attr.name + "'");
      out.codes.emplace_back(static_cast<double>(label->order_index));
    } else {
      out.codes.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::vector<double> fcm_memberships(double x, const std::vector<double>& centers, double m) {
  std::vector<double> out(centers.size(), 0.0);
  std::vector<double> d2(centers.size());
  std::size_t zero_hits = 0;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    d2[j] = (x - centers[j]) * (x - centers[j]);
    if (d2[j] == 0.0) ++zero_hits;
  }
  if (zero_hits > 0) {
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (d2[j] == 0.0) out[j] = 1.0 / static_cast<double>(zero_hits);
    }
    return out;
  }
  const double e = 1.0 / (m - 1.0);
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < centers.size(); ++k) s += std::pow(d2[j] / d2[k], e);
    out[j] = 1.0 / s;
  }
  return out;
}

double fcm_objective(const std::vector<double>& values, const std::vector<double>& centers,
                     const std::vector<std::vector<double>>& u, double m) {
  double j = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t k = 0; k < centers.size(); ++k) {
      double d = values[i] - centers[k];
      j += std::pow(u[i][k], m) * d * d;
    }
  }
  return j;
}

FcmResult fcm(const std::vector<double>& values, const FcmOptions& opt) {
  if (opt.clusters < 2) throw ConfigError("FCM needs at least 2 clusters");
  if (!(opt.fuzzifier > 1.0)) throw ConfigError("FCM fuzzifier must be > 1");
  if (opt.max_iterations < 1) throw ConfigError("FCM max_iterations must be positive");
  if (values.empty()) throw ClusteringError("FCM on empty input");
  for (double v : values) {
    if (!std::isfinite(v)) throw ClusteringError("FCM input contains a non-finite value");
  }
  if (std::set<double>(values.begin(), values.end()).size() < static_cast<std::size_t>(opt.clusters)) {
    throw ClusteringError("FCM needs at least " + std::to_string(opt.clusters) + " distinct values");
  }

  // Work on sorted data so the result does not depend on input order.
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> x(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) x[i] = values[order[i]];

  const auto c = static_cast<std::size_t>(opt.clusters);
  FcmResult res;
  std::vector<double> centers = kmeanspp_init(x, opt.clusters, opt.seed);
  std::vector<std::vector<double>> u(x.size());
  for (int it = 0; it < opt.max_iterations; ++it) {
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = fcm_memberships(x[i], centers, opt.fuzzifier);
    std::vector<double> next = update_centers(x, u, centers, opt.fuzzifier);
    res.objective.push_back(fcm_objective(x, next, u, opt.fuzzifier));
    double shift = 0.0;
    for (std::size_t j = 0; j < c; ++j) shift = std::max(shift, std::abs(next[j] - centers[j]));
    centers = std::move(next);
    res.iterations = it + 1;
    if (shift < opt.tolerance) break;
  }

  for (std::size_t j = 0; j < c; ++j) centers[j] += static_cast<double>(j) * 1e-12;
  std::sort(centers.begin(), centers.end());
  res.centers = centers;
  res.memberships.assign(values.size(), {});
  for (std::size_t i = 0; i < x.size(); ++i) {
    res.memberships[order[i]] = fcm_memberships(x[i], centers, opt.fuzzifier);
  }
  return res;
}

ClusterModel bind_labels(ClusterModel model, const AttributeSpec& attr) {
  if (model.centers.size() != attr.labels.size()) {
    throw ConfigError("attribute '" + attr.name + "': " + std::to_string(model.centers.size()) + " clusters but " +
                      std::to_string(attr.labels.size()) + " labels");
  }
  if (!std::is_sorted(model.centers.begin(), model.centers.end())) {
    throw ConfigError("attribute '" + attr.name + "': cluster centers are not sorted");
  }
  model.attribute = attr.name;
  model.label_binding.clear();
  for (const auto& l : attr.labels) model.label_binding.push_back(l.name);
  return model;
}

AttributeClustering cluster_attribute(const Dataset& ds, const AttributeSpec& attr, FcmOptions options) {
  IntermediateColumn col = encode_dataset(ds, attr);
  std::vector<double> present;
  for (const auto& code : col.codes) {
    if (code) present.push_back(*code);
  }
  options.clusters = attr.cluster_count;
  AttributeClustering out;
  try {
    out.fit = fcm(present, options);
  } catch (const ClusteringError& e) {
    throw ClusteringError("attribute '" + attr.name + "': " + e.what());
  }
  ClusterModel model;
  model.centers = out.fit.centers;
  model.fuzzifier = options.fuzzifier;
  out.model = bind_labels(std::move(model), attr);

  out.matrix.attribute = attr.name;
  out.matrix.tuple_ids = col.tuple_ids;
  std::size_t next = 0;
  for (const auto& code : col.codes) {
    if (code) {
      out.matrix.rows.push_back(out.fit.memberships[next++]);
    } else {
      out.matrix.rows.emplace_back(out.fit.centers.size(), 0.0);
    }
  }
  return out;
}

std::vector<AttributeClustering> cluster_dataset(const Dataset& ds, const FcmOptions& base) {
  std::vector<AttributeClustering> out;
  for (const auto& attr : ds.schema.attributes) {
    if (attr.clustered()) out.push_back(cluster_attribute(ds, attr, base));
  }
  return out;
}

FuzzyContext build_context(const Dataset& ds, const std::vector<ClusterModel>& models,
                           const std::vector<MembershipMatrix>& matrices) {
  FuzzyContext ctx;
  ctx.objects = ds.tuple_ids;

  struct Column {
    std::size_t attr_pos;
    std::size_t label_pos;
    const MembershipMatrix* matrix = nullptr;
    std::size_t cluster = 0;
  };
  std::vector<Column> columns;
  for (std::size_t a = 0; a < ds.schema.attributes.size(); ++a) {
    const auto& attr = ds.schema.attributes[a];
    const ClusterModel* model = nullptr;
    const MembershipMatrix* matrix = nullptr;
    if (attr.clustered()) {
      for (const auto& m : models) {
        if (m.attribute == attr.name) model = &m;
      }
      for (const auto& m : matrices) {
        if (m.attribute == attr.name) matrix = &m;
      }
      if (!model || !matrix) throw DataError("attribute '" + attr.name + "' has no membership matrix");
      if (matrix->tuple_ids != ds.tuple_ids || matrix->rows.size() != ds.tuple_ids.size()) {
        throw DataError("membership matrix of '" + attr.name + "' covers a different tuple set");
      }
    }
    for (std::size_t l = 0; l < attr.labels.size(); ++l) {
      Column col{a, l};
      if (matrix) {
        auto it = std::find(model->label_binding.begin(), model->label_binding.end(), attr.labels[l].name);
        if (it == model->label_binding.end()) {
          throw DataError("label '" + attr.labels[l].name + "' is not bound to a cluster of '" + attr.name + "'");
        }
        col.matrix = matrix;
        col.cluster = static_cast<std::size_t>(it - model->label_binding.begin());
      }
      ctx.attributes.push_back(make_key(attr.name, attr.labels[l].name));
      columns.push_back(col);
    }
  }

  ctx.degrees.reserve(ctx.objects.size() * columns.size());
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    for (const auto& col : columns) {
      const auto& attr = ds.schema.attributes[col.attr_pos];
      const FuzzyValue& v = ds.rows[i].at(col.attr_pos);
      double d = 0.0;
      if (col.matrix) {
        if (std::holds_alternative<Unknown>(v)) {
          d = 1.0;
        } else if (!std::holds_alternative<Undefined>(v) && !std::holds_alternative<Null>(v)) {
          const auto& row = col.matrix->rows[i];
          if (col.cluster >= row.size()) throw DataError("membership row too short for '" + attr.name + "'");
          d = row[col.cluster];
        }
      } else {
        d = value_label_membership(v, attr.labels[col.label_pos], attr);
      }
      ctx.degrees.push_back(std::clamp(d, 0.0, 1.0));
    }
  }
  return ctx;
}

}  // namespace fuzzsum
