#include "nel/ranker.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "nel/error.hpp"

namespace nel {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string method_name(FeatureMethod m) { return m == FeatureMethod::Sgm ? "sgm" : "gowgk"; }

FeatureMethod method_from(const std::string& name) {
  if (name == "sgm") return FeatureMethod::Sgm;
  if (name == "gowgk") return FeatureMethod::GowGk;
  throw ConfigError("unknown feature method: " + name);
}

std::string kernel_name(KernelConfig::Kind k) {
  return k == KernelConfig::Kind::ShortestPath ? "sp" : "pyramid";
}

KernelConfig::Kind kernel_from(const std::string& name) {
  if (name == "sp") return KernelConfig::Kind::ShortestPath;
  if (name == "pyramid") return KernelConfig::Kind::Pyramid;
  throw ConfigError("unknown kernel: " + name);
}

}  // namespace

LinearModel train(const std::vector<LabeledSample>& samples, const TrainConfig& config,
                  ModelInfo info) {
  if (samples.empty()) throw ConfigError("training set is empty");
  if (config.learning_rate <= 0) throw ConfigError("learning rate must be positive");
  if (config.l2 < 0) throw ConfigError("l2 penalty must be non-negative");
  if (config.epochs < 1) throw ConfigError("epoch count must be >= 1");

  std::size_t dim = samples[0].x.size();
  bool has_positive = false, has_negative = false;
  for (const LabeledSample& s : samples) {
    if (s.x.size() != dim) throw DimensionError(dim, s.x.size());
    (s.label ? has_positive : has_negative) = true;
  }
  if (!has_positive || !has_negative) throw SingleClassError();

  std::vector<double> w(dim, 0.0), grad(dim);
  double b = 0.0;
  double n = static_cast<double>(samples.size());
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (const LabeledSample& s : samples) {
      double z = b;
      for (std::size_t j = 0; j < dim; ++j) z += w[j] * s.x[j];
      double g = sigmoid(z) - static_cast<double>(s.label);
      for (std::size_t j = 0; j < dim; ++j) grad[j] += g * s.x[j];
      grad_b += g;
    }
    for (std::size_t j = 0; j < dim; ++j)
      w[j] -= config.learning_rate * (grad[j] / n + config.l2 * w[j]);
    b -= config.learning_rate * grad_b / n;
  }

  LinearModel model;
  model.weights = std::move(w);
  model.bias = b;
  model.info = std::move(info);
  return model;
}

double predict(const LinearModel& model, const FeatureVector& x) {
  if (x.size() != model.weights.size()) throw DimensionError(model.weights.size(), x.size());
  double z = model.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += model.weights[j] * x[j];
  return sigmoid(z);
}

void LinearModel::validate_against(const TypeOntology& ontology) const {
  info.phi.validate_against(ontology);
  if (weights.size() != ontology.size())
    throw ConfigError("model dimension " + std::to_string(weights.size()) +
                      " does not match ontology size " + std::to_string(ontology.size()));
}

void LinearModel::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["method"] = method_name(info.method);
  j["aggregate"] = info.aggregate == NeighborAggregate::Mean ? "mean" : "max";
  j["k"] = info.k;
  j["weights"] = weights;
  j["bias"] = bias;
  j["phi"] = {{"labels", info.phi.labels()}, {"upper", info.phi.upper()}};
  j["kernel"] = {{"kind", kernel_name(info.kernel.kind)},
                 {"window", info.kernel.window_size},
                 {"pyramid_dim", info.kernel.pyramid_dim},
                 {"pyramid_levels", info.kernel.pyramid_levels}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

LinearModel LinearModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    LinearModel model;
    model.info.method = method_from(j.at("method").get<std::string>());
    std::string aggregate = j.at("aggregate").get<std::string>();
    if (aggregate != "mean" && aggregate != "max")
      throw ConfigError("unknown aggregate: " + aggregate);
    model.info.aggregate =
        aggregate == "mean" ? NeighborAggregate::Mean : NeighborAggregate::Max;
    model.info.k = j.at("k").get<int>();
    model.weights = j.at("weights").get<std::vector<double>>();
    model.bias = j.at("bias").get<double>();
    model.info.phi = TypeMapping::from_upper(
        j.at("phi").at("labels").get<std::vector<std::string>>(),
        j.at("phi").at("upper").get<std::vector<std::uint8_t>>());
    const auto& kernel = j.at("kernel");
    model.info.kernel.kind = kernel_from(kernel.at("kind").get<std::string>());
    model.info.kernel.window_size = kernel.at("window").get<int>();
    model.info.kernel.pyramid_dim = kernel.at("pyramid_dim").get<int>();
    model.info.kernel.pyramid_levels = kernel.at("pyramid_levels").get<int>();
    if (model.info.k < 1) throw ConfigError("model k must be >= 1");
    if (model.weights.size() != model.info.phi.size())
      throw ConfigError("model weight count does not match its type labels");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

Linker::Linker(const KnowledgeBase& kb, const KnowledgeGraph& graph, const TfidfIndex& index,
               const LinearModel& model, FilterOptions filter_options)
    : model_(model),
      filter_(kb, index, filter_options),
      extractor_(kb, graph, index, model.feature_config()) {
  model.validate_against(kb.ontology());
}

Prediction Linker::link(const Query& query, StageTimings* timings) const {
  auto t0 = std::chrono::steady_clock::now();
  FilterResult filtered = filter_.candidates(query, model_.info.k);
  if (timings) timings->filter_s += elapsed_s(t0);
  if (filtered.candidates.empty()) return {};

  auto t1 = std::chrono::steady_clock::now();
  std::vector<UngatedFeatures> features = extractor_.ungated_batch(query, filtered.candidates);
  if (timings) timings->features_s += elapsed_s(t1);

  auto t2 = std::chrono::steady_clock::now();
  std::size_t best = 0;
  double best_p = -1.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    double p = predict(model_, extractor_.gated(features[i], model_.info.phi));
    if (p > best_p) {  // ties keep the earlier, higher-ranked candidate
      best_p = p;
      best = i;
    }
  }
  if (timings) timings->inference_s += elapsed_s(t2);
  return {filtered.candidates[best].entity_id, best_p};
}

Prediction link(const Query& query, const KnowledgeBase& kb, const KnowledgeGraph& graph,
                const TfidfIndex& index, const LinearModel& model) {
  return Linker(kb, graph, index, model).link(query);
}

}  // namespace nel
