#include <algorithm>
#include <random>

#include "nel/error.hpp"
#include "nel/ranker.hpp"

namespace nel {
namespace {

using Genome = std::vector<std::uint8_t>;

// Candidate lists, ungated features and labels are independent of the type
// mapping, so they are computed once and re-gated per genome.
struct PreparedQuery {
  std::vector<Candidate> candidates;
  std::vector<UngatedFeatures> features;
  std::string gold;
};

std::vector<PreparedQuery> prepare_queries(std::span<const Query> queries, const Filter& filter,
                                           const FeatureExtractor& extractor, int k,
                                           const char* split) {
  std::vector<PreparedQuery> prepared;
  prepared.reserve(queries.size());
  for (const Query& q : queries) {
    if (!q.gold_entity)
      throw ConfigError(std::string(split) + " query " + q.id + " lacks a gold entity id");
    PreparedQuery p;
    p.candidates = filter.candidates(q, k).candidates;
    p.features = extractor.ungated_batch(q, p.candidates);
    p.gold = *q.gold_entity;
    prepared.push_back(std::move(p));
  }
  return prepared;
}

}  // namespace

TuneResult tune_phi(std::span<const Query> train_queries, std::span<const Query> val_queries,
                    const KnowledgeBase& kb, const KnowledgeGraph& graph, const TfidfIndex& index,
                    int k, const FeatureConfig& features, const GeneticConfig& genetic,
                    const TrainConfig& training) {
  if (train_queries.empty() || val_queries.empty())
    throw ConfigError("tuning needs non-empty training and validation query sets");
  if (genetic.population < 2) throw ConfigError("population must be >= 2");
  if (genetic.elitism < 0 || genetic.elitism >= genetic.population)
    throw ConfigError("elitism must be in [0, population)");
  if (genetic.generations < 1) throw ConfigError("generation count must be >= 1");
  if (genetic.crossover_rate < 0 || genetic.crossover_rate > 1)
    throw ConfigError("crossover rate must be in [0, 1]");

  const TypeOntology& ontology = kb.ontology();
  std::size_t genome_len = TypeMapping::upper_size(ontology.size());
  double mutation = genetic.mutation_rate >= 0 ? genetic.mutation_rate
                                               : 1.0 / static_cast<double>(genome_len);
  if (mutation > 1) throw ConfigError("mutation rate must be <= 1");

  Filter filter(kb, index);
  FeatureExtractor extractor(kb, graph, index, features);
  std::vector<PreparedQuery> train_set =
      prepare_queries(train_queries, filter, extractor, k, "training");
  std::vector<PreparedQuery> val_set =
      prepare_queries(val_queries, filter, extractor, k, "validation");

  // Label balance is mapping-independent; fail before the search starts.
  bool has_positive = false, has_negative = false;
  for (const PreparedQuery& p : train_set)
    for (const Candidate& c : p.candidates)
      (c.entity_id == p.gold ? has_positive : has_negative) = true;
  if (!has_positive || !has_negative) throw SingleClassError();

  ModelInfo info;
  info.method = features.method;
  info.aggregate = features.aggregate;
  info.kernel = features.kernel;
  info.k = k;

  auto fitness = [&](const Genome& genome) {
    TypeMapping phi = TypeMapping::from_upper(ontology.labels(), genome);
    std::vector<LabeledSample> samples;
    for (const PreparedQuery& p : train_set)
      for (std::size_t i = 0; i < p.candidates.size(); ++i) {
        LabeledSample s;
        s.x = extractor.gated(p.features[i], phi);
        s.label = p.candidates[i].entity_id == p.gold ? 1 : 0;
        samples.push_back(std::move(s));
      }
    ModelInfo genome_info = info;
    genome_info.phi = phi;
    LinearModel model = train(samples, training, std::move(genome_info));

    std::size_t correct = 0;
    for (const PreparedQuery& p : val_set) {
      if (p.candidates.empty()) continue;
      std::size_t best = 0;
      double best_p = -1.0;
      for (std::size_t i = 0; i < p.candidates.size(); ++i) {
        double prob = predict(model, extractor.gated(p.features[i], phi));
        if (prob > best_p) {
          best_p = prob;
          best = i;
        }
      }
      if (p.candidates[best].entity_id == p.gold) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(val_set.size());
  };

  std::mt19937_64 rng(genetic.seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, genetic.population - 1);

  std::vector<Genome> population;
  population.push_back(Genome(genome_len, 1));  // the trivial all-ones mapping seeds the search
  while (population.size() < static_cast<std::size_t>(genetic.population)) {
    Genome g(genome_len);
    for (auto& bit : g) bit = static_cast<std::uint8_t>(coin(rng));
    population.push_back(std::move(g));
  }

  std::vector<double> scores(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) scores[i] = fitness(population[i]);

  Genome best_genome = population[0];
  double best_score = scores[0];
  auto update_best = [&]() {
    for (std::size_t i = 0; i < population.size(); ++i)
      if (scores[i] > best_score) {
        best_score = scores[i];
        best_genome = population[i];
      }
  };
  update_best();

  TuneResult result;
  result.generation_best.push_back(*std::max_element(scores.begin(), scores.end()));

  auto tournament = [&]() -> std::size_t {
    std::size_t a = pick(rng), b = pick(rng);
    if (scores[a] != scores[b]) return scores[a] > scores[b] ? a : b;
    return std::min(a, b);
  };

  for (int gen = 1; gen < genetic.generations; ++gen) {
    std::vector<std::size_t> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<Genome> next;
    std::vector<double> next_scores;
    for (int e = 0; e < genetic.elitism; ++e) {
      next.push_back(population[order[e]]);
      next_scores.push_back(scores[order[e]]);  // elites keep their evaluation
    }
    while (next.size() < static_cast<std::size_t>(genetic.population)) {
      std::size_t a = tournament(), b = tournament();
      Genome child = population[a];
      if (uniform(rng) < genetic.crossover_rate)
        for (std::size_t i = 0; i < genome_len; ++i)
          if (coin(rng)) child[i] = population[b][i];
      for (std::size_t i = 0; i < genome_len; ++i)
        if (uniform(rng) < mutation) child[i] ^= 1;
      next_scores.push_back(fitness(child));
      next.push_back(std::move(child));
    }
    population = std::move(next);
    scores = std::move(next_scores);
    update_best();
    result.generation_best.push_back(*std::max_element(scores.begin(), scores.end()));
  }

  result.phi = TypeMapping::from_upper(ontology.labels(), best_genome);
  result.best_fitness = best_score;
  return result;
}

}  // namespace nel
