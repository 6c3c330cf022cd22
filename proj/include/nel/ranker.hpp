#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nel/features.hpp"
#include "nel/filtering.hpp"
#include "nel/phi.hpp"

// Logistic re-ranker: trained on labeled candidate features, applied as
// argmax over a query's candidate list. Also hosts the genetic search over
// type mappings.

namespace nel {

struct TrainConfig {
  double learning_rate = 0.1;
  double l2 = 1e-4;  // applied to weights, not the bias
  int epochs = 500;
  std::uint64_t seed = 42;
};

// Everything needed to reproduce feature extraction at link time.
struct ModelInfo {
  FeatureMethod method = FeatureMethod::Sgm;
  NeighborAggregate aggregate = NeighborAggregate::Mean;
  KernelConfig kernel;
  int k = 7;
  TypeMapping phi;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0;
  ModelInfo info;

  FeatureConfig feature_config() const { return {info.method, info.aggregate, info.kernel}; }

  void save(const std::filesystem::path& path) const;
  static LinearModel load(const std::filesystem::path& path);

  // Model files carry the ontology labels via phi; loading against a
  // different KB must fail loudly.
  void validate_against(const TypeOntology& ontology) const;
};

// Full-batch gradient descent on the mean L2-regularized logistic loss,
// starting from zeros. Deterministic for a fixed configuration. Throws
// SingleClassError unless both classes are present, ConfigError on empty
// input or non-positive hyperparameters.
LinearModel train(const std::vector<LabeledSample>& samples, const TrainConfig& config,
                  ModelInfo info);

// sigmoid(w·x + b); throws DimensionError on length mismatch.
double predict(const LinearModel& model, const FeatureVector& x);

struct Prediction {
  std::optional<std::string> entity_id;  // empty when the filter returned nothing
  double probability = 0;
};

struct StageTimings {
  double filter_s = 0;
  double features_s = 0;
  double inference_s = 0;
};

// One query end to end: filter, featurize, score, take the argmax. Exact
// probability ties go to the candidate ranked earlier by the filter (which
// already breaks its own ties by entity id).
class Linker {
 public:
  Linker(const KnowledgeBase& kb, const KnowledgeGraph& graph, const TfidfIndex& index,
         const LinearModel& model, FilterOptions filter_options = {});

  Prediction link(const Query& query, StageTimings* timings = nullptr) const;
  int k() const { return model_.info.k; }

 private:
  LinearModel model_;  // by value: the linker must outlive any temporary it was built from
  Filter filter_;
  FeatureExtractor extractor_;
};

Prediction link(const Query& query, const KnowledgeBase& kb, const KnowledgeGraph& graph,
                const TfidfIndex& index, const LinearModel& model);

struct GeneticConfig {
  int population = 20;
  int generations = 15;
  double crossover_rate = 0.7;
  double mutation_rate = -1;  // <0 means 1 / genome length
  int elitism = 2;
  std::uint64_t seed = 42;
};

struct TuneResult {
  TypeMapping phi;
  double best_fitness = 0;                 // precision@1 on the validation queries
  std::vector<double> generation_best;     // one entry per generation, non-decreasing
};

// Genetic search over the upper triangle of the type mapping. Fitness of a
// genome is precision@1 on the validation queries after retraining the
// ranker with that mapping. Generation zero holds the all-ones mapping plus
// random genomes; elites survive unchanged, children come from tournament
// selection, uniform crossover and per-gene bit flips.
TuneResult tune_phi(std::span<const Query> train_queries, std::span<const Query> val_queries,
                    const KnowledgeBase& kb, const KnowledgeGraph& graph, const TfidfIndex& index,
                    int k, const FeatureConfig& features, const GeneticConfig& genetic,
                    const TrainConfig& training);

}  // namespace nel
